#pragma once

// Rate shapes from the observability estimates. Every undetermined
// multiplicative constant is set to kRateConstant = 1.

#include <string>

namespace obslab {

inline constexpr double kRateConstant = 1.0;

enum class Rate { Upsilon0, Upsilon1, Upsilon2, Cobs };

/// Off-diagonal decay: lambda^-alpha (alpha in [1/2,1)), log(lambda)/lambda
/// (alpha = 1), 1/lambda (alpha > 1).
double upsilon0(double lambda, double alpha);

/// Relaxed observability rate, T in (0, 1/2): T^{-(1 + 6/(2alpha-1))},
/// T^-7 log(1/T)^6, T^-7. Needs alpha > 1/2.
double upsilon1(double T, double alpha);

/// Resolvent rate: (1+|l|)^{-(alpha-1/2)}, (1+|l|)^{-1/2} log(e+|l|),
/// (1+|l|)^{-1/2}. Needs alpha >= 1/2.
double upsilon2(double lambda, double alpha);

/// log log C_obs(T): the inner exponent of the double exponential.
double log_log_c_obs(double T, double alpha);

/// exp(exp(log_log_c_obs)); +inf once it overflows a double.
double c_obs(double T, double alpha);

struct RateBundle {
  double alpha = 1.5;

  double upsilon0(double lambda) const { return obslab::upsilon0(lambda, alpha); }
  double upsilon1(double T) const { return obslab::upsilon1(T, alpha); }
  double upsilon2(double lambda) const { return obslab::upsilon2(lambda, alpha); }
  double c_obs(double T) const { return obslab::c_obs(T, alpha); }
};

double rate_eval(const RateBundle& bundle, Rate which, double arg);

Rate parse_rate(const std::string& name);
std::string rate_name(Rate r);

}  // namespace obslab
