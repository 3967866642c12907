#pragma once

#include "eqlab/exactarith.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eqlab {

struct NotADesign : std::runtime_error {
    NotADesign(int t, const std::string& what) : std::runtime_error(what), strength(t) {}
    int strength;
};
struct PointOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct NotQuasiSymmetric : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotApplicable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidBlockSet : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using Block = std::vector<int>;

// Simple uniform family of k-subsets of {0..d-1}, blocks kept sorted.
class BlockSet {
public:
    BlockSet() = default;
    BlockSet(int point_count, std::vector<Block> blocks);

    int point_count() const { return d_; }
    int block_size() const { return k_; }
    std::size_t size() const { return blocks_.size(); }
    const std::vector<Block>& blocks() const { return blocks_; }
    const Block& operator[](std::size_t i) const { return blocks_[i]; }

    // Distinct pairwise intersection sizes, largest first.
    std::vector<int> intersection_numbers() const;
    BlockSet complement() const;
    std::optional<std::size_t> index_of(const Block& b) const;

    std::string to_text() const;
    static BlockSet from_text(std::string_view text);

    friend bool operator==(const BlockSet& a, const BlockSet& b) {
        return a.d_ == b.d_ && a.k_ == b.k_ && a.blocks_ == b.blocks_;
    }

private:
    int d_ = 0;
    int k_ = 0;
    std::vector<Block> blocks_;
};

int intersection_size(const Block& a, const Block& b);

struct DesignCertificate {
    int t = 0;
    Integer lambda;
    Integer b;
    Integer r;
    std::vector<Integer> lambdas;       // lambda_j for j = 0..t
    std::vector<int> intersection_numbers;  // descending
    bool quasi_symmetric() const { return intersection_numbers.size() == 2; }
    int s1() const { return intersection_numbers.at(0); }
    int s2() const { return intersection_numbers.at(1); }
};

BlockSet golay_heptads();
BlockSet pair_blockset(int d);
BlockSet pg32_sts15();
// The quasi-symmetric 2-(6,3,2;2,1) design on Z5 plus a point at infinity.
BlockSet qs_design_6_3_2();

// Certifies strength t and reports the largest strength (up to k) that also holds.
DesignCertificate certify_design(const BlockSet& bs, int t);

BlockSet derived_design(const BlockSet& bs, int p);
BlockSet residual_design(const BlockSet& bs, int p);

struct SrgReport {
    Integer vertices;
    Rational degree, p, q;
    Rational theta0, theta1, theta2;
    bool graph_matches = false;  // constructed block graph has these parameters
    bool connected = false;
};

SrgReport block_graph_srg(const BlockSet& bs);

Integer calderbank_f(const Integer& n, const Integer& k, const Integer& x, const Integer& y);
Rational calderbank_f(const Rational& n, const Rational& k, const Rational& x, const Rational& y);

enum class Verdict { Pass, Fail, NotApplicable };
const char* to_string(Verdict v);
inline std::ostream& operator<<(std::ostream& o, Verdict v) { return o << to_string(v); }

// Calderbank's p = 2 congruence theorem; throws NotApplicable on mixed-parity intersections.
Verdict calderbank_mod_a(const Integer& v, const Integer& k, const Integer& lambda, const Integer& r,
                         const std::vector<Integer>& intersections);

}  // namespace eqlab
