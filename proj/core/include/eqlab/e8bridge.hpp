#pragma once

#include "eqlab/designkit.hpp"
#include "eqlab/exactarith.hpp"
#include "eqlab/linesys.hpp"
#include "eqlab/twograph.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqlab {

struct SearchExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotMoved : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct CensusMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotReflectionClosed : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RankMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoIncoherentWitness : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 276 lines over the basis of 23 incoherent lines, with Gram form G = (4/5)I + (1/5)J.
// Lines 0..22 are the basis; line 23+b belongs to heptad b.
struct BasisCoordSystem {
    BlockSet heptads;
    ExactMatrix gram;
    std::vector<RationalVector> lines;
};

BasisCoordSystem build_basis_coords();
LineSystem certify_basis_coords(const BasisCoordSystem& sys);

struct InvolutionAction {
    std::vector<int> perm;       // on the 23 points
    Block fixed_heptad;
    std::vector<int> line_perm;  // on the 276 lines
    std::vector<std::pair<int, int>> transpositions;
};

// The which-th involution (lexicographic order) fixing the first heptad pointwise.
InvolutionAction find_involution(const BlockSet& bs, int which = 0);
// Induced permutation of the 276 lines of build_basis_coords.
std::vector<int> induced_line_perm(const BlockSet& bs, const std::vector<int>& perm);

struct HeptadCensus {
    std::array<int, 4> types{};  // types 0..3
    int other = 0;
    bool moved_meet_in_three = true;  // |B ∩ B^x| = 3 for types 2 and 3
};

HeptadCensus heptad_census(const BlockSet& bs, const InvolutionAction& x);

struct EigenSplit {
    std::vector<int> fixed, moved;
    std::size_t fixed_rank = 0;
    std::optional<RegularityParams> fixed_regular;
    bool relative_saturated = false;
};

EigenSplit eigenspace_split(const BasisCoordSystem& sys, const InvolutionAction& x);

// (delta - delta^x)/2 in basis coordinates.
RationalVector project_to_w(const BasisCoordSystem& sys, const InvolutionAction& x, int line);
// Coordinates of a W-vector over w_j = alpha_p - alpha_{x(p)}, one per transposition (p < x(p)).
RationalVector w_coordinates(const InvolutionAction& x, const RationalVector& v);
// Gram form on the w_j basis.
ExactMatrix w_form(const BasisCoordSystem& sys, const InvolutionAction& x);

Rational form_inner(const ExactMatrix& form, const RationalVector& u, const RationalVector& v);

struct E8Certificate {
    std::size_t roots = 0;
    std::size_t rank = 0;
    Rational norm;
    std::map<Rational, std::size_t> census;  // cosine -> count, identical for every root
    bool reflection_closed = false;
};

// Throws CensusMismatch, RankMismatch or NotReflectionClosed.
E8Certificate certify_e8(const std::vector<RationalVector>& roots, const ExactMatrix& form);

// Lines spanned by the 56 roots at cosine +-1/2 to roots[alpha], projected onto alpha-perp.
LineSystem descend_28(const std::vector<RationalVector>& roots, const ExactMatrix& form, int alpha);

struct DescentStage {
    std::string name;
    std::vector<int> indices;  // into the starting system
    LineSystem lines;
    std::size_t rank = 0;
    std::optional<std::size_t> inc;
    std::vector<int> incoherent;  // indices into this stage's own lines
    std::optional<RegularityParams> regular;
};

// 28 -> 16 -> 10 -> 6 given an incoherent witness of size 7 in the starting system.
std::vector<DescentStage> descend_chain(const LineSystem& start, const std::vector<int>& witness);

struct E8StageError : std::runtime_error {
    E8StageError(std::string stage_name, const std::string& what)
        : std::runtime_error(what), stage(std::move(stage_name)) {}
    std::string stage;
};

struct E8Report {
    InvolutionAction involution;
    HeptadCensus census;
    EigenSplit split;
    std::size_t projections = 0;
    bool norms_ok = false;          // every projection has G-norm 2/5
    bool inner_values_ok = false;   // pairwise G-inner products in {0, 1/5, -1/5}
    bool coords_match = false;      // w-coordinates reproduce the G-Gram
    E8Certificate e8;
    LineSystem lines28;
    std::vector<int> witness28;
    std::vector<DescentStage> chain;
};

// Each stage failure is rethrown as E8StageError naming the stage.
E8Report run_e8_pipeline(int which_involution = 0);

}  // namespace eqlab
