#pragma once

namespace repsucc {

enum class Sided { one = 1, two = 2 };

/// Critical value of the standard normal test at level alpha: z_{alpha/2}
/// for two-sided tests, z_{alpha} for one-sided ones. Throws DomainError
/// unless 0 < alpha < 1.
double critical_value(double alpha, Sided sided);

}  // namespace repsucc
