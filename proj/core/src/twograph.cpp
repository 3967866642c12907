#include "eqlab/twograph.hpp"

#include <random>
#include <stdexcept>

namespace eqlab {

SimpleGraph::SimpleGraph(int n) : n_(n), adj_(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n))) {}

void SimpleGraph::add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("loops are not allowed");
    adj_[u].set(static_cast<std::size_t>(v));
    adj_[v].set(static_cast<std::size_t>(u));
}

void SimpleGraph::remove_edge(int u, int v) {
    adj_[u].reset(static_cast<std::size_t>(v));
    adj_[v].reset(static_cast<std::size_t>(u));
}

std::size_t SimpleGraph::edge_count() const {
    std::size_t c = 0;
    for (const auto& row : adj_) c += row.count();
    return c / 2;
}

SimpleGraph switch_graph(const SimpleGraph& g, const std::vector<int>& x) {
    const int n = g.size();
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (int v : x) {
        if (v < 0 || v >= n) throw std::out_of_range("switching set outside vertex range");
        in[v] = 1;
    }
    SimpleGraph out(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            const bool edge = g.has_edge(u, v);
            if (edge != (in[u] != in[v])) out.add_edge(u, v);
        }
    return out;
}

std::size_t TwoGraph::pair_index(int i, int j) const {
    if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("invalid point pair");
    if (i > j) std::swap(i, j);
    const auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(j), n = static_cast<std::size_t>(n_);
    return a * n - a * (a + 1) / 2 + (b - a - 1);
}

const Bitset& TwoGraph::s_set_bits(int i, int j) const { return s_[pair_index(i, j)]; }

TwoGraph TwoGraph::from_graph(const SimpleGraph& g) {
    TwoGraph t;
    t.n_ = g.size();
    const auto n = static_cast<std::size_t>(t.n_);
    t.s_.reserve(n * (n - 1) / 2);
    for (int i = 0; i < t.n_; ++i)
        for (int j = i + 1; j < t.n_; ++j) {
            // k completes an odd triple iff e_ij + e_ik + e_jk is odd
            Bitset s = g.neighbours(i) ^ g.neighbours(j);
            if (g.has_edge(i, j)) s.flip_all();
            s.reset(static_cast<std::size_t>(i));
            s.reset(static_cast<std::size_t>(j));
            t.s_.push_back(std::move(s));
        }
    return t;
}

TwoGraph TwoGraph::from_predicate(int n, const std::function<bool(int, int, int)>& coherent) {
    TwoGraph t;
    t.n_ = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Bitset s(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k)
                if (k != i && k != j && coherent(i, j, k)) s.set(static_cast<std::size_t>(k));
            t.s_.push_back(std::move(s));
        }
    return t;
}

std::uint64_t TwoGraph::coherent_triple_count() const {
    std::uint64_t c = 0;
    for (const auto& s : s_) c += s.count();
    return c / 3;
}

TwoGraph TwoGraph::complement() const {
    TwoGraph t(*this);
    std::size_t idx = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) {
            Bitset& s = t.s_[idx++];
            s.flip_all();
            s.reset(static_cast<std::size_t>(i));
            s.reset(static_cast<std::size_t>(j));
        }
    return t;
}

namespace {
bool odd_four(const TwoGraph& t, int a, int b, int c, int d) {
    const int n = t.coherent(a, b, c) + t.coherent(a, b, d) + t.coherent(a, c, d) + t.coherent(b, c, d);
    return n % 2 != 0;
}
}  // namespace

std::optional<std::array<int, 4>> TwoGraph::axiom_violation_exhaustive() const {
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b)
            for (int c = b + 1; c < n_; ++c)
                for (int d = c + 1; d < n_; ++d)
                    if (odd_four(*this, a, b, c, d)) return std::array<int, 4>{a, b, c, d};
    return std::nullopt;
}

std::optional<std::array<int, 4>> TwoGraph::axiom_violation_sampled(std::size_t samples, std::uint64_t seed) const {
    if (n_ < 4) return std::nullopt;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n_ - 1);
    for (std::size_t s = 0; s < samples; ++s) {
        std::array<int, 4> q{};
        for (int i = 0; i < 4; ++i) {
            bool fresh;
            do {
                q[i] = pick(rng);
                fresh = true;
                for (int j = 0; j < i; ++j) fresh = fresh && q[j] != q[i];
            } while (!fresh);
        }
        std::sort(q.begin(), q.end());
        if (odd_four(*this, q[0], q[1], q[2], q[3])) return q;
    }
    return std::nullopt;
}

RegularityResult regularity(const TwoGraph& t) {
    const int n = t.size();
    RegularityParams p;
    p.n = n;
    if (n >= 2) {
        p.a = static_cast<int>(t.s_set_bits(0, 1).count());
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (static_cast<int>(t.s_set_bits(i, j).count()) != p.a)
                    return NotRegular{{i, j}, "pair lies in " + std::to_string(t.s_set_bits(i, j).count()) +
                                                  " coherent triples, expected " + std::to_string(p.a)};
    }
    bool have_b = false;
    long b = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Bitset& sij = t.s_set_bits(i, j);
            for (std::size_t k = sij.next(static_cast<std::size_t>(j) + 1); k < sij.size(); k = sij.next(k + 1)) {
                const int kk = static_cast<int>(k);
                const long c = static_cast<long>(and_count(sij, t.s_set_bits(i, kk), t.s_set_bits(j, kk)));
                if (!have_b) {
                    b = c;
                    have_b = true;
                } else if (c != b) {
                    return NotRegular{{i, j, kk}, "coherent triple lies in " + std::to_string(c) +
                                                      " coherent 4-sets, expected " + std::to_string(b)};
                }
            }
        }
    p.b = have_b ? Rational(b) : Rational(Integer(3 * p.a - n), Integer(2));
    p.b_vacuous = !have_b;
    p.a_star = Rational(n - p.a - 2);
    p.b_star = Rational(Integer(n), Integer(2)) - p.b - 3;
    p.complement_integral = p.b_star.is_integer();
    return p;
}

const RegularityParams* regular_params(const RegularityResult& r) { return std::get_if<RegularityParams>(&r); }

Coherent4Designs coherent4_designs(const TwoGraph& t) {
    const auto reg = regularity(t);
    const auto* p = regular_params(reg);
    if (!p) throw NotRegularError(std::get<NotRegular>(reg).reason);
    const int n = t.size();
    Bitset all(static_cast<std::size_t>(n));
    all.set_all();
    bool first = true;
    Coherent4Designs out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Bitset& sij = t.s_set_bits(i, j);
            long twice0 = 0, twice2 = 0;
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const Bitset& sik = t.s_set_bits(i, k);
                const Bitset& sjk = t.s_set_bits(j, k);
                if (sij.test(static_cast<std::size_t>(k))) {
                    twice0 += static_cast<long>(and_count(sij, sik, sjk));
                } else {
                    Bitset none = all;
                    none.and_not(sij);
                    none.and_not(sik);
                    none.and_not(sjk);
                    none.reset(static_cast<std::size_t>(i));
                    none.reset(static_cast<std::size_t>(j));
                    none.reset(static_cast<std::size_t>(k));
                    twice2 += static_cast<long>(none.count());
                }
            }
            const Integer l0 = twice0 / 2, l2 = twice2 / 2;
            const Integer l1 = binomial(n - 2, 2) - l0 - l2;
            if (first) {
                out = {l0, l1, l2};
                first = false;
            } else if (l0 != out.lambda0 || l1 != out.lambda1 || l2 != out.lambda2) {
                throw NotRegularError("4-set counts through pair (" + std::to_string(i) + "," + std::to_string(j) +
                                      ") differ");
            }
        }
    return out;
}

SSetDesignReport s_set_design(const TwoGraph& t) {
    SSetDesignReport rep;
    const auto reg = regularity(t);
    const auto* p = regular_params(reg);
    if (!p) {
        rep.witness = std::get<NotRegular>(reg).witness;
        return rep;
    }
    const int n = t.size();
    rep.is_design = true;
    bool first = true;
    for (int g = 0; g < n && rep.is_design; ++g)
        for (int h = g + 1; h < n && rep.is_design; ++h) {
            // pairs {x,y} with g,h both in S_xy: x outside {g,h}, y in S_xg ∩ S_xh
            long twice = 0;
            for (int x = 0; x < n; ++x) {
                if (x == g || x == h) continue;
                Bitset common = t.s_set_bits(x, g) & t.s_set_bits(x, h);
                twice += static_cast<long>(common.count());
            }
            // y = g or y = h would need {x,g,g}; those never occur since S_xg excludes g
            const Integer c = twice / 2;
            if (first) {
                rep.lambda = c;
                first = false;
            } else if (c != rep.lambda) {
                rep.is_design = false;
                rep.witness = {g, h};
            }
        }
    if (rep.is_design && rep.lambda != Integer(p->a) * (p->a - 1) / 2) {
        rep.is_design = false;
        rep.witness.clear();
    }
    rep.intersection_law = true;
    const Rational half_a(Integer(p->a), Integer(2));
    for (int x = 0; x < n && rep.intersection_law; ++x)
        for (int y = 0; y < n && rep.intersection_law; ++y)
            for (int z = y + 1; z < n && rep.intersection_law; ++z) {
                if (x == y || x == z) continue;
                const Rational c(static_cast<long>(and_count(t.s_set_bits(x, y), t.s_set_bits(x, z))));
                const Rational want = t.coherent(x, y, z) ? p->b : half_a;
                if (!(c == want)) {
                    rep.intersection_law = false;
                    rep.witness = {x, y, z};
                }
            }
    return rep;
}

}  // namespace eqlab
