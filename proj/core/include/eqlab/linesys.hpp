#pragma once

#include "eqlab/designkit.hpp"
#include "eqlab/exactarith.hpp"
#include "eqlab/twograph.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eqlab {

struct NotEquiangular : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NegativeDelta1 : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateAngle : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParameterMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotMaximal : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoWitness : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CorruptLineSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Equiangular line system: common squared norm N and (v_i, v_j)^2 rho^2 = N^2 for i != j.
// Inner products use the optional rational form G (u^T G v), identity otherwise.
class LineSystem {
public:
    static LineSystem certify(int dim, std::vector<QuadVector> vectors,
                              std::optional<ExactMatrix> form = std::nullopt);

    int dim() const { return dim_; }
    std::size_t size() const { return vectors_.size(); }
    const std::vector<QuadVector>& vectors() const { return vectors_; }
    const QuadVector& vector(std::size_t i) const { return vectors_[i]; }
    const std::optional<ExactMatrix>& form() const { return form_; }

    const Rational& radicand() const { return radicand_; }
    const QuadScalar& norm_sq() const { return norm_sq_; }
    const Rational& rho_sq() const { return rho_sq_; }
    const QuadScalar& rho() const { return rho_; }
    bool rho_is_integer() const { return rho_.is_rational() && rho_.rat().is_integer(); }
    QuadScalar kappa() const { return QuadScalar(1) / rho_; }

    const ExactMatrix& gram() const { return gram_; }
    int sign(std::size_t i, std::size_t j) const { return gram_(i, j).sign(); }
    std::size_t span_dim() const { return span_dim_; }

    QuadScalar inner(const QuadVector& u, const QuadVector& v) const;
    LineSystem subsystem(const std::vector<int>& indices) const;
    LineSystem with_vector(const QuadVector& v) const;

    std::string to_json() const;
    static LineSystem from_json(std::string_view text);

private:
    int dim_ = 0;
    std::vector<QuadVector> vectors_;
    std::optional<ExactMatrix> form_;
    Rational radicand_;
    QuadScalar norm_sq_;
    Rational rho_sq_;
    QuadScalar rho_;
    ExactMatrix gram_;
    std::size_t span_dim_ = 0;
};

TwoGraph from_lines(const LineSystem& lines);

// --- constructions ---------------------------------------------------------

LineSystem construct_omega(const BlockSet& bs, int epsilon = 1);

struct AugmentedSystem {
    LineSystem lines;           // block vectors first, then the d point vectors
    std::vector<int> witness;   // indices of the point vectors
};
AugmentedSystem construct_augmented(const BlockSet& bs);

// Appends c*(1,...,1) with c^2 = N/d; throws NotEquiangular if the result is not equiangular.
LineSystem augment_all_ones(const LineSystem& lines);
LineSystem sts15_plus_one();
LineSystem icosahedron_lines();
LineSystem hexagon_lines();

// --- bounds ----------------------------------------------------------------

struct BoundsReport {
    std::size_t lines = 0;
    int ambient_dim = 0;
    std::size_t span_dim = 0;
    Rational rho_sq;
    Integer absolute_bound;
    bool absolute_saturated = false;
    bool relative_applicable = false;
    Rational relative_bound;
    bool relative_saturated = false;
    bool neumann_applicable = false;  // n > 2d
    bool rho_odd_integer = false;
    bool neumann_ok = true;
    std::optional<std::size_t> inc;
    bool inc_within_bound = true;
    std::vector<std::string> notes;
};

BoundsReport bounds_report(const LineSystem& lines, std::optional<std::size_t> inc = std::nullopt);

// --- incoherent sets -------------------------------------------------------

bool is_incoherent(const TwoGraph& t, const std::vector<int>& set);

struct IncoherentWitness {
    std::vector<int> lines;  // sorted
};

// Checks every triple product is positive and the lines are independent.
IncoherentWitness certify_incoherent(const LineSystem& lines, std::vector<int> set);

struct IncoherentSearch {
    std::vector<int> best;
    bool complete = false;   // false when the node budget ran out; best is then a lower bound
    bool reached_cap = false;
    std::uint64_t nodes = 0;
};

constexpr std::uint64_t kDefaultSearchBudget = 10'000'000;

IncoherentSearch find_max_incoherent(const TwoGraph& t, std::size_t cap,
                                     std::uint64_t budget = kDefaultSearchBudget);
IncoherentSearch find_max_incoherent(const LineSystem& lines, std::size_t cap = 0,
                                     std::uint64_t budget = kDefaultSearchBudget);
// Lexicographically least incoherent set of the given size (sorted index order).
std::optional<std::vector<int>> lex_least_incoherent(const TwoGraph& t, std::size_t size);

struct GammaPartition {
    int gamma = -1;
    std::vector<int> part1;  // smaller part (lexicographically first on ties)
    std::vector<int> part2;
    bool balanced() const { return part1.size() == part2.size(); }
};

GammaPartition gamma_partition(const TwoGraph& t, const std::vector<int>& gamma_set, int gamma);

struct CheckResult {
    std::string name;
    bool ok = true;
    std::string detail;
    std::vector<int> witness;
};

CheckResult taylor_size_check(const LineSystem& lines, const TwoGraph& t, const std::vector<int>& gamma_set);
CheckResult taylor_vector_check(const LineSystem& lines, const TwoGraph& t, const std::vector<int>& gamma_set,
                                int gamma);
CheckResult taylor_intersection_check(const LineSystem& lines, const TwoGraph& t,
                                      const std::vector<int>& gamma_set);

struct IncoherentDesign {
    bool balanced = false;
    BlockSet blocks;  // points are positions within the incoherent set
    DesignCertificate cert;
    bool three_design = false;
    bool matches_expected = false;
    Rational expected_lambda;   // k(k-1)/(rho^2-d), or n-d-3a/2 for the balanced 3-design
    Rational expected_s1, expected_s2;
    std::optional<BlockSet> derived, residual;
    std::optional<DesignCertificate> derived_cert, residual_cert;
};

IncoherentDesign incoherent_design(const LineSystem& lines, const TwoGraph& t, const std::vector<int>& gamma_set);

std::vector<CheckResult> setsum_checks(const TwoGraph& t, const std::vector<int>& gamma_set);

struct FourSumReport {
    bool sums_ok = true;
    Integer expected_sum;
    bool constant = false;
    std::optional<Integer> value;  // the constant intersection when constant
    Rational predicted_constant;
    std::vector<int> witness;
};

FourSumReport foursum_check(const TwoGraph& t, const std::vector<int>& gamma_set);

struct MomentRecord {
    int degree = 0;
    QuadScalar sum;
    QuadScalar target;
};

struct SphericalDesignReport {
    bool passes = false;
    bool tight = false;
    std::size_t points = 0;
    Integer tight_count;
    std::vector<MomentRecord> moments;
};

SphericalDesignReport spherical_design_check(const LineSystem& lines, int t);

}  // namespace eqlab
