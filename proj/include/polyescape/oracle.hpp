#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "polyescape/escape.hpp"
#include "polyescape/matrix.hpp"

namespace polyescape {

// Floating-point validation tools. Nothing here is used to decide a verdict.

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> points;
  std::optional<double> escape_time;
};

/// exp(A t_k) x0 at `samples` uniformly spaced times in [0, horizon].
/// Throws std::overflow_error when the entries leave the double range.
Trajectory simulate(const RationalMatrix& a, const std::vector<double>& x0, double horizon, std::size_t samples);
/// Affine dynamics of an instance; escape_time is the first sample with a
/// relative violation above `tolerance`.
Trajectory simulate(const EscapeInstance& inst, const std::vector<double>& x0, double horizon, std::size_t samples,
                    double tolerance = 1e-6);

/// Same sampling for an exact starting point. x0 is split by the spectral
/// projections first, so a component that is exactly zero stays zero; this
/// tracks witnesses on stable manifolds of expanding systems, where the
/// dense flow loses every digit.
Trajectory simulate_spectral(const EscapeInstance& inst, const std::vector<AlgebraicNumber>& x0, double horizon,
                             std::size_t samples, double tolerance = 1e-6);

/// exp(A t) x0 for one time.
std::vector<double> flow(const RationalMatrix& a, const std::vector<double>& x0, double t);
std::vector<double> flow(const EscapeInstance& inst, const std::vector<double>& x0, double t);

/// Largest violation (b_i - B_i x) / max(1, |B_i||x| + |b_i|) over all rows;
/// nonpositive when x is in the closure of P.
double relative_violation(const EscapeInstance& inst, const std::vector<double>& x);

struct ScanResult {
  bool escapes = false;
  double time = 0;  // first detected violation, refined to 1e-6
};

/// Uniform sampling (step at most 0.01 unless `samples` asks for more) and
/// bisection around the first violation. "Stays" is not a proof.
ScanResult escape_scan(const EscapeInstance& inst, const std::vector<double>& x0, double horizon, double tolerance,
                       std::size_t samples = 0);

/// Smallest n in [1, N] with |n theta_i - psi_i - round(...)| < eps for all i.
std::optional<std::size_t> kronecker_scan(const std::vector<double>& theta, const std::vector<double>& psi, double eps,
                                          std::size_t n_max);

/// c * z_var^exponent, paired with its conjugate-inverted partner.
struct LaurentTerm {
  std::complex<double> coefficient;
  std::size_t variable = 0;
  int exponent = 1;
};

/// g(z) = sum_j (c_j z_{i_j}^{n_j} + conj(c_j) z_{i_j}^{-n_j}) evaluated at
/// z_i = exp(2 pi i n theta_i).
struct LaurentSpec {
  std::vector<LaurentTerm> terms;
  std::vector<double> theta;

  double evaluate(double n) const;
  /// Coefficients after merging equal monomials are all zero.
  bool is_identically_zero() const;
};

struct LiminfResult {
  bool identically_zero = false;
  double min_value = 0;
  std::size_t argmin = 0;
};

LiminfResult liminf_scan(const LaurentSpec& g, std::size_t n_max);

struct PreconditionViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Decides by explicit closed forms. Requires d <= 3 and A diagonalizable
/// over Q; throws PreconditionViolation otherwise.
Verdict closed_form_decide(const EscapeInstance& inst);
bool closed_form_applicable(const EscapeInstance& inst);

}  // namespace polyescape
