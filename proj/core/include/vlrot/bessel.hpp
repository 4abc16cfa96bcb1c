#pragma once

// Bessel functions J_p and modified I_p for small integer orders, evaluated
// by downward (Miller) recurrence with series normalization. Accuracy target
// is 1e-10 relative over the argument range the wave initializer needs.

namespace vlrot {

/// Bessel function of the first kind, integer order p >= 0.
double bessel_j(int p, double x);

/// Modified Bessel function of the first kind, integer order p >= 0.
/// Throws numerical_error when e^|x| would overflow.
double bessel_i(int p, double x);

/// exp(-|x|) * I_p(x); safe for large arguments.
double bessel_i_scaled(int p, double x);

}  // namespace vlrot
