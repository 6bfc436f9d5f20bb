#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyescape/algebraic.hpp"
#include "polyescape/lp.hpp"
#include "polyescape/matrix.hpp"
#include "polyescape/spectral.hpp"

namespace polyescape {

/// x' = A x + a inside {B1 x > b1, B2 x >= b2}.
struct EscapeInstance {
  std::size_t dimension = 0;
  RationalMatrix A;
  RationalVector a;
  RationalMatrix strict_B;
  RationalVector strict_b;
  RationalMatrix nonstrict_B;
  RationalVector nonstrict_b;

  /// Throws std::invalid_argument on inconsistent shapes or no rows.
  void validate() const;
  std::size_t strict_rows() const { return strict_b.size(); }
  std::size_t nonstrict_rows() const { return nonstrict_b.size(); }
  std::size_t row_count() const { return strict_rows() + nonstrict_rows(); }

  static EscapeInstance linear(RationalMatrix A, RationalMatrix strict_B, RationalVector strict_b,
                               RationalMatrix nonstrict_B, RationalVector nonstrict_b);
};

/// Linear dynamics on (x, y) with a polyhedral cone. Rows are ordered as the
/// strict block (original strict rows, then y > 0) followed by the
/// non-strict block.
struct HomogeneousInstance {
  std::size_t dimension = 0;  // d + 1
  RationalMatrix A;
  RationalMatrix strict_B;
  RationalMatrix nonstrict_B;

  std::size_t row_count() const { return strict_B.rows() + nonstrict_B.rows(); }
  RationalVector row(std::size_t i) const;
  Relation relation(std::size_t i) const;
  /// Drops the last coordinate after scaling it to 1; throws if it is not positive.
  std::vector<AlgebraicNumber> back_map(const std::vector<AlgebraicNumber>& z) const;
};

HomogeneousInstance homogenize(const EscapeInstance& inst);

/// One (eigenvalue, power of t) index with a real eigenvalue.
struct PairLabel {
  AlgebraicNumber eta;
  unsigned j = 0;
};

/// One conjunctive system from the union describing the eventually-trapped
/// points for a single row.
struct Member {
  bool all_zero = false;
  std::optional<PairLabel> dominant;
  std::vector<PairLabel> zeroed;
  ConjunctiveSystem<AlgebraicNumber> system;
  bool rational = true;
};

struct RowMembers {
  std::size_t row = 0;
  Relation rel = Relation::GreaterEqual;
  std::size_t complex_equalities = 0;
  std::vector<Member> members;
};

struct RowCertificate {
  std::size_t row = 0;  // index in the homogeneous instance
  Relation rel = Relation::GreaterEqual;
  bool positivity_row = false;  // the added y > 0 row
  bool all_zero = false;
  std::optional<PairLabel> dominant;
  std::vector<PairLabel> zeroed;
  std::size_t complex_equalities = 0;
};

enum class Outcome { AllEscape, TrappedExists };

struct Witness {
  std::vector<AlgebraicNumber> point;  // in the original space
  bool rational = true;
  double shift_time = 0;                // time the raw point was advanced by
  bool simulation_checked = false;      // stays in P numerically up to the horizon
};

struct StageTimings {
  double homogenize_ms = 0, spectral_ms = 0, members_ms = 0, search_ms = 0, witness_ms = 0;
};

struct Verdict {
  Outcome outcome = Outcome::AllEscape;
  std::optional<Witness> witness;
  std::vector<RowCertificate> certificate;
  bool degenerate_observable = false;
  std::size_t feasibility_calls = 0;
  StageTimings timings;
};

struct DecideOptions {
  std::size_t max_branches = 1000000;  // feasibility calls
  double timeout_seconds = 300;
  bool refine_witness = true;
  double check_horizon = 50;
};

/// Raised when the branch budget or the timeout runs out.
struct ResourceLimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Eigenstructure and per-row coefficient tables of a homogeneous instance.
class EscapeContext {
 public:
  explicit EscapeContext(const EscapeInstance& inst);

  const EscapeInstance& instance() const { return inst_; }
  const HomogeneousInstance& homogeneous() const { return hom_; }
  const SpectralData& spectral() const { return *spectral_; }
  const CoefficientTable& table(std::size_t row) const { return tables_.at(row); }
  /// Real eigenvalue pairs (eigenvalue position, j), most dominant first.
  const std::vector<std::pair<std::size_t, unsigned>>& real_pairs() const { return real_pairs_; }

 private:
  EscapeInstance inst_;
  HomogeneousInstance hom_;
  std::shared_ptr<const SpectralData> spectral_;
  std::vector<CoefficientTable> tables_;
  std::vector<std::pair<std::size_t, unsigned>> real_pairs_;
};

RowMembers per_constraint_members(const EscapeContext& ctx, std::size_t row);
/// Standalone form: members for row b under the given table.
std::vector<Member> per_constraint_members(const RationalVector& b, Relation rel, const CoefficientTable& table);

Verdict decide_escape(const EscapeInstance& inst, const DecideOptions& options = {});

struct WitnessCheck {
  bool accepted = false;
  std::string reason;
};

/// Symbolic check that x is eventually trapped.
WitnessCheck verify_witness(const std::vector<AlgebraicNumber>& x, const EscapeInstance& inst);
WitnessCheck verify_witness(const RationalVector& x, const EscapeInstance& inst);
WitnessCheck verify_witness(const std::vector<AlgebraicNumber>& x, const EscapeContext& ctx);

/// Largest relative constraint violation along a sampled trajectory from x
/// (0 if none).
double simulated_violation(const EscapeInstance& inst, const std::vector<double>& x, double horizon,
                           std::size_t samples);

std::string to_string(Outcome outcome);

}  // namespace polyescape
