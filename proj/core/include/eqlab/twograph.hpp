#pragma once

#include "eqlab/bitset.hpp"
#include "eqlab/exactarith.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace eqlab {

class SimpleGraph {
public:
    SimpleGraph() = default;
    explicit SimpleGraph(int n);

    int size() const { return n_; }
    void add_edge(int u, int v);
    void remove_edge(int u, int v);
    bool has_edge(int u, int v) const { return adj_[u].test(static_cast<std::size_t>(v)); }
    const Bitset& neighbours(int u) const { return adj_[u]; }
    std::size_t edge_count() const;

    friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) { return a.adj_ == b.adj_; }

private:
    int n_ = 0;
    std::vector<Bitset> adj_;
};

// Interchange edges and non-edges between X and its complement.
SimpleGraph switch_graph(const SimpleGraph& g, const std::vector<int>& x);

// Two-graph stored as the sets S_ij = { k : {i,j,k} coherent } for every pair.
class TwoGraph {
public:
    TwoGraph() = default;

    // Coherent triples are those spanning an odd number of edges.
    static TwoGraph from_graph(const SimpleGraph& g);
    static TwoGraph from_predicate(int n, const std::function<bool(int, int, int)>& coherent);

    int size() const { return n_; }
    bool coherent(int i, int j, int k) const { return s_set_bits(i, j).test(static_cast<std::size_t>(k)); }
    const Bitset& s_set_bits(int i, int j) const;
    std::vector<int> s_set(int i, int j) const { return s_set_bits(i, j).indices(); }
    std::uint64_t coherent_triple_count() const;

    TwoGraph complement() const;

    // First 4-subset (lexicographic) holding an odd number of coherent triples.
    std::optional<std::array<int, 4>> axiom_violation_exhaustive() const;
    std::optional<std::array<int, 4>> axiom_violation_sampled(std::size_t samples, std::uint64_t seed) const;

    friend bool operator==(const TwoGraph& a, const TwoGraph& b) { return a.n_ == b.n_ && a.s_ == b.s_; }

private:
    std::size_t pair_index(int i, int j) const;

    int n_ = 0;
    std::vector<Bitset> s_;  // indexed by unordered pair i < j
};

struct RegularityParams {
    int n = 0;
    int a = 0;
    Rational b;
    Rational a_star;
    Rational b_star;
    bool b_vacuous = false;           // no coherent triple to count over; b taken from n = 3a - 2b
    bool complement_integral = true;  // false when b* is not an integer (odd n)
};

struct NotRegular {
    std::vector<int> witness;  // offending pair or triple, lexicographically first
    std::string reason;
};

using RegularityResult = std::variant<RegularityParams, NotRegular>;

RegularityResult regularity(const TwoGraph& t);
const RegularityParams* regular_params(const RegularityResult& r);

struct NotRegularError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Coherent4Designs {
    Integer lambda0, lambda1, lambda2;
};

// Counts the coherent, mixed and incoherent 4-sets through every pair; throws NotRegularError.
Coherent4Designs coherent4_designs(const TwoGraph& t);

struct SSetDesignReport {
    bool is_design = false;          // {S_ab} is a 2-(n, a, a(a-1)/2) design
    Integer lambda;                  // observed pair count when constant
    bool intersection_law = false;   // |S_ab ∩ S_ac| = b or a/2 by coherence of {a,b,c}
    std::vector<int> witness;
};

SSetDesignReport s_set_design(const TwoGraph& t);

}  // namespace eqlab
