#include "eqlab/designkit.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace eqlab {

BlockSet::BlockSet(int point_count, std::vector<Block> blocks) : d_(point_count), blocks_(std::move(blocks)) {
    if (d_ < 0) throw InvalidBlockSet("negative point count");
    k_ = blocks_.empty() ? 0 : static_cast<int>(blocks_.front().size());
    for (auto& b : blocks_) {
        if (static_cast<int>(b.size()) != k_) throw InvalidBlockSet("blocks of unequal size");
        std::sort(b.begin(), b.end());
        if (std::adjacent_find(b.begin(), b.end()) != b.end())
            throw InvalidBlockSet("repeated point inside a block");
        if (!b.empty() && (b.front() < 0 || b.back() >= d_))
            throw InvalidBlockSet("block point outside 0.." + std::to_string(d_ - 1));
    }
    std::sort(blocks_.begin(), blocks_.end());
    if (std::adjacent_find(blocks_.begin(), blocks_.end()) != blocks_.end())
        throw InvalidBlockSet("repeated block");
}

int intersection_size(const Block& a, const Block& b) {
    int n = 0;
    auto i = a.begin(), j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else { ++n; ++i; ++j; }
    }
    return n;
}

std::vector<int> BlockSet::intersection_numbers() const {
    std::set<int, std::greater<>> seen;
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        for (std::size_t j = i + 1; j < blocks_.size(); ++j) seen.insert(intersection_size(blocks_[i], blocks_[j]));
    return {seen.begin(), seen.end()};
}

BlockSet BlockSet::complement() const {
    std::vector<Block> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) {
        Block c;
        std::size_t j = 0;
        for (int p = 0; p < d_; ++p) {
            if (j < b.size() && b[j] == p) ++j;
            else c.push_back(p);
        }
        out.push_back(std::move(c));
    }
    return BlockSet(d_, std::move(out));
}

std::optional<std::size_t> BlockSet::index_of(const Block& b) const {
    Block key(b);
    std::sort(key.begin(), key.end());
    auto it = std::lower_bound(blocks_.begin(), blocks_.end(), key);
    if (it == blocks_.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - blocks_.begin());
}

std::string BlockSet::to_text() const {
    std::ostringstream out;
    out << d_ << ' ' << k_ << '\n';
    for (const auto& b : blocks_) {
        for (std::size_t i = 0; i < b.size(); ++i) out << (i ? " " : "") << b[i];
        out << '\n';
    }
    return out.str();
}

BlockSet BlockSet::from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw InvalidBlockSet("empty block-set text");
    int d = 0, k = 0;
    {
        std::istringstream head(line);
        if (!(head >> d >> k)) throw InvalidBlockSet("header must be \"d k\"");
    }
    std::vector<Block> blocks;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        Block b;
        int p;
        while (row >> p) b.push_back(p);
        if (!row.eof()) throw InvalidBlockSet("non-integer token in block line");
        if (static_cast<int>(b.size()) != k) throw InvalidBlockSet("block size differs from header");
        blocks.push_back(std::move(b));
    }
    BlockSet bs(d, std::move(blocks));
    if (bs.blocks_.empty()) bs.k_ = k;
    return bs;
}

BlockSet golay_heptads() {
    // Binary quadratic-residue code of length 23: spanned by the cyclic shifts of the
    // indicator word of the nonzero squares mod 23.
    constexpr int n = 23;
    std::uint32_t qr = 0;
    for (int x = 1; x < n; ++x) qr |= 1u << ((x * x) % n);
    std::vector<std::uint32_t> basis;
    auto reduce = [&](std::uint32_t w) {
        for (auto b : basis) w = std::min(w, w ^ b);
        return w;
    };
    for (int s = 0; s < n; ++s) {
        const std::uint32_t w = ((qr << s) | (qr >> (n - s))) & ((1u << n) - 1);
        const std::uint32_t r = reduce(w);
        if (r) {
            basis.push_back(r);
            std::sort(basis.begin(), basis.end(), std::greater<>());
        }
    }
    std::vector<Block> blocks;
    for (std::uint32_t mask = 0; mask < (1u << basis.size()); ++mask) {
        std::uint32_t w = 0;
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (mask >> i & 1u) w ^= basis[i];
        if (std::popcount(w) != 7) continue;
        Block b;
        for (int p = 0; p < n; ++p)
            if (w >> p & 1u) b.push_back(p);
        blocks.push_back(std::move(b));
    }
    return BlockSet(n, std::move(blocks));
}

BlockSet pair_blockset(int d) {
    if (d < 2) throw InvalidBlockSet("pair block set needs d >= 2");
    std::vector<Block> blocks;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) blocks.push_back({i, j});
    return BlockSet(d, std::move(blocks));
}

BlockSet pg32_sts15() {
    // points are the nonzero vectors of GF(2)^4, point index = vector - 1
    std::vector<Block> blocks;
    for (int u = 1; u < 16; ++u)
        for (int v = u + 1; v < 16; ++v)
            if ((u ^ v) > v) blocks.push_back({u - 1, v - 1, (u ^ v) - 1});
    return BlockSet(15, std::move(blocks));
}

BlockSet qs_design_6_3_2() {
    std::vector<Block> blocks;
    for (int i = 0; i < 5; ++i) {
        blocks.push_back({5, i, (i + 1) % 5});
        blocks.push_back({i, (i + 1) % 5, (i + 3) % 5});
    }
    return BlockSet(6, std::move(blocks));
}

namespace {

// Number of blocks containing each t-subset, indexed by colex rank.
std::vector<std::uint32_t> subset_counts(const BlockSet& bs, int t) {
    const int d = bs.point_count();
    const Integer total = binomial(d, t);
    if (total > 200000000) throw std::length_error("too many t-subsets to count");
    std::vector<std::vector<std::uint64_t>> choose(d + 1, std::vector<std::uint64_t>(t + 1, 0));
    for (int n = 0; n <= d; ++n)
        for (int r = 0; r <= t; ++r) choose[n][r] = binomial(n, r).get_ui();
    std::vector<std::uint32_t> counts(total.get_ui(), 0);
    std::vector<int> idx(t);
    for (const auto& b : bs.blocks()) {
        const int k = static_cast<int>(b.size());
        if (t > k) continue;
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            std::uint64_t rank = 0;
            for (int r = 0; r < t; ++r) rank += choose[b[idx[r]]][r + 1];
            ++counts[rank];
            int r = t - 1;
            while (r >= 0 && idx[r] == k - t + r) --r;
            if (r < 0) break;
            ++idx[r];
            for (int s = r + 1; s < t; ++s) idx[s] = idx[s - 1] + 1;
        }
    }
    return counts;
}

bool constant_counts(const BlockSet& bs, int t, Integer& value) {
    const auto counts = subset_counts(bs, t);
    if (counts.empty()) return false;
    const bool same = std::all_of(counts.begin(), counts.end(), [&](auto c) { return c == counts.front(); });
    value = Integer(static_cast<unsigned long>(counts.front()));
    return same;
}

}  // namespace

DesignCertificate certify_design(const BlockSet& bs, int t) {
    const int d = bs.point_count(), k = bs.block_size();
    if (t < 0 || t > k) throw NotADesign(t, "strength must satisfy 0 <= t <= k");
    if (bs.size() == 0) throw NotADesign(t, "empty block family");
    Integer lambda;
    if (!constant_counts(bs, t, lambda))
        throw NotADesign(t, "some " + std::to_string(t) + "-subset count differs");
    DesignCertificate cert;
    cert.t = t;
    cert.lambda = lambda;
    Integer next;
    while (cert.t < k && constant_counts(bs, cert.t + 1, next)) {
        ++cert.t;
        cert.lambda = next;
    }
    for (int j = 0; j <= cert.t; ++j) {
        Integer lj;
        if (j == 0) lj = static_cast<unsigned long>(bs.size());
        else if (!constant_counts(bs, j, lj))
            throw NotADesign(j, "lower strength count not constant");
        if (lj * binomial(k - j, cert.t - j) != cert.lambda * binomial(d - j, cert.t - j))
            throw NotADesign(cert.t, "lambda_" + std::to_string(j) + " violates the divisibility identity");
        cert.lambdas.push_back(lj);
    }
    cert.b = cert.lambdas[0];
    cert.r = cert.t >= 1 ? cert.lambdas[1] : Integer(0);
    cert.intersection_numbers = bs.intersection_numbers();
    return cert;
}

BlockSet derived_design(const BlockSet& bs, int p) {
    if (p < 0 || p >= bs.point_count()) throw PointOutOfRange("point " + std::to_string(p));
    std::vector<Block> out;
    for (const auto& b : bs.blocks()) {
        if (!std::binary_search(b.begin(), b.end(), p)) continue;
        Block c;
        for (int x : b)
            if (x != p) c.push_back(x > p ? x - 1 : x);
        out.push_back(std::move(c));
    }
    return BlockSet(bs.point_count() - 1, std::move(out));
}

BlockSet residual_design(const BlockSet& bs, int p) {
    if (p < 0 || p >= bs.point_count()) throw PointOutOfRange("point " + std::to_string(p));
    std::vector<Block> out;
    for (const auto& b : bs.blocks()) {
        if (std::binary_search(b.begin(), b.end(), p)) continue;
        Block c;
        for (int x : b) c.push_back(x > p ? x - 1 : x);
        out.push_back(std::move(c));
    }
    return BlockSet(bs.point_count() - 1, std::move(out));
}

SrgReport block_graph_srg(const BlockSet& bs) {
    const auto inter = bs.intersection_numbers();
    if (inter.size() != 2) throw NotQuasiSymmetric("block set has " + std::to_string(inter.size()) + " intersection numbers");
    const DesignCertificate cert = certify_design(bs, 2);
    const int s1 = inter[0], s2 = inter[1];
    const Rational k(bs.block_size()), b(cert.b), r(cert.r), lambda(cert.lambdas.at(2));
    const Rational gap(s1 - s2);
    SrgReport rep;
    rep.vertices = cert.b;
    rep.theta0 = (k * (r - 1) - (b - 1) * s2) / gap;
    rep.theta1 = ((r - lambda) - (k - s2)) / gap;
    rep.theta2 = -(k - s2) / gap;
    rep.degree = rep.theta0;
    rep.p = rep.theta0 + rep.theta1 + rep.theta2 + rep.theta1 * rep.theta2;
    rep.q = rep.theta0 + rep.theta1 * rep.theta2;

    const std::size_t n = bs.size(), words = (n + 63) / 64;
    std::vector<std::uint64_t> adj(n * words, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (intersection_size(bs[i], bs[j]) == s1) {
                adj[i * words + j / 64] |= 1ull << (j % 64);
                adj[j * words + i / 64] |= 1ull << (i % 64);
            }
    auto degree = [&](std::size_t i) {
        long c = 0;
        for (std::size_t w = 0; w < words; ++w) c += std::popcount(adj[i * words + w]);
        return c;
    };
    auto common = [&](std::size_t i, std::size_t j) {
        long c = 0;
        for (std::size_t w = 0; w < words; ++w) c += std::popcount(adj[i * words + w] & adj[j * words + w]);
        return c;
    };
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = Rational(degree(i)) == rep.degree;
    for (std::size_t i = 0; i < n && ok; ++i)
        for (std::size_t j = i + 1; j < n && ok; ++j) {
            const bool edge = adj[i * words + j / 64] >> (j % 64) & 1ull;
            ok = Rational(common(i, j)) == (edge ? rep.p : rep.q);
        }
    rep.graph_matches = ok;

    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t u = 0; u < n; ++u)
            if (!seen[u] && (adj[v * words + u / 64] >> (u % 64) & 1ull)) {
                seen[u] = 1;
                ++reached;
                stack.push_back(u);
            }
    }
    rep.connected = reached == n;
    return rep;
}

Integer calderbank_f(const Integer& n, const Integer& k, const Integer& x, const Integer& y) {
    const Integer kk = k * (n - k);
    return (n - 1) * (n - 2) * x * y - kk * (n - 2) * (x + y) + kk * (kk - 1);
}

Rational calderbank_f(const Rational& n, const Rational& k, const Rational& x, const Rational& y) {
    const Rational kk = k * (n - k);
    return (n - 1) * (n - 2) * x * y - kk * (n - 2) * (x + y) + kk * (kk - 1);
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::NotApplicable: return "not-applicable";
    }
    return "?";
}

namespace {
long mod(const Integer& a, long m) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(m));
    return r.get_si();
}
}  // namespace

Verdict calderbank_mod_a(const Integer& v, const Integer& k, const Integer& lambda, const Integer& r,
                         const std::vector<Integer>& intersections) {
    if (intersections.empty()) throw NotApplicable("no intersection numbers");
    const long s = mod(intersections.front(), 2);
    for (const auto& x : intersections)
        if (mod(x, 2) != s) throw NotApplicable("intersection numbers of mixed parity");
    if (mod(r - lambda, 4) == 0) return Verdict::Pass;
    const long v8 = mod(v, 8);
    const bool v_ok = v8 == 1 || v8 == 7;
    if (s == 0 && mod(k, 4) == 0 && v_ok) return Verdict::Pass;
    if (s == 1 && mod(k - v, 4) == 0 && v_ok) return Verdict::Pass;
    return Verdict::Fail;
}

}  // namespace eqlab
