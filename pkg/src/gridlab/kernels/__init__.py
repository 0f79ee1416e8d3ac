"""Loss/gradient kernels.

Both submodules expose the same two functions:

``ode_loss_grad(theta, h1, h2, t, order2, coef, t0, x0, v0)``
    -> (residual_loss, ic_loss, grad)

``pde_loss_grad(theta, h1, h2, xi, yi, fvals, xb, yb, gvals)``
    -> (residual_loss, bc_loss, grad)

``h2 == 0`` selects the one-hidden-layer network.  The forward pass carries
second-order jets of the output along each needed input axis; the backward
pass accumulates the parameter gradient of the composite mean-squared loss
through the jet computation.  Per-point loss contributions are summed left
to right in dataset order.
"""
