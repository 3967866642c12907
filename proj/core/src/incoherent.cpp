#include "eqlab/linesys.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace eqlab {

bool is_incoherent(const TwoGraph& t, const std::vector<int>& set) {
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            for (std::size_t k = j + 1; k < set.size(); ++k)
                if (t.coherent(set[i], set[j], set[k])) return false;
    return true;
}

IncoherentWitness certify_incoherent(const LineSystem& lines, std::vector<int> set) {
    std::sort(set.begin(), set.end());
    if (std::adjacent_find(set.begin(), set.end()) != set.end()) throw NoWitness("repeated line in witness");
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            for (std::size_t k = j + 1; k < set.size(); ++k) {
                const auto a = static_cast<std::size_t>(set[i]), b = static_cast<std::size_t>(set[j]),
                           c = static_cast<std::size_t>(set[k]);
                if (lines.sign(a, b) * lines.sign(a, c) * lines.sign(b, c) < 0)
                    throw NoWitness("coherent triple inside witness");
            }
    std::vector<QuadVector> sub;
    for (int i : set) sub.push_back(lines.vector(static_cast<std::size_t>(i)));
    if (ExactMatrix::from_rows(sub).rank() != set.size()) throw NoWitness("witness lines are dependent");
    return IncoherentWitness{std::move(set)};
}

namespace {

class CliqueSearch {
public:
    CliqueSearch(const std::vector<Bitset>& adj, std::size_t cap, std::uint64_t budget, std::uint64_t& nodes,
                 std::vector<int>& best)
        : adj_(adj), cap_(cap), budget_(budget), nodes_(nodes), best_(best) {}

    bool aborted() const { return aborted_; }
    bool done() const { return done_; }

    void run(int root, const Bitset& candidates) {
        current_.assign(1, root);
        if (best_.size() < 1) best_ = current_;
        if (!candidates.none()) expand(candidates);
    }

private:
    void expand(Bitset p) {
        if (++nodes_ > budget_) {
            aborted_ = true;
            return;
        }
        std::vector<int> order, colour;
        Bitset uncoloured = p;
        int c = 0;
        while (!uncoloured.none()) {
            ++c;
            Bitset q = uncoloured;
            for (std::size_t v = q.first(); v < q.size(); v = q.next(v + 1)) {
                q.and_not(adj_[v]);
                uncoloured.reset(v);
                order.push_back(static_cast<int>(v));
                colour.push_back(c);
            }
        }
        for (std::size_t i = order.size(); i-- > 0;) {
            if (current_.size() + static_cast<std::size_t>(colour[i]) <= best_.size()) return;
            const int v = order[i];
            current_.push_back(v);
            Bitset np = p & adj_[static_cast<std::size_t>(v)];
            if (np.none()) {
                if (current_.size() > best_.size()) {
                    best_ = current_;
                    if (best_.size() >= cap_) done_ = true;
                }
            } else {
                expand(np);
            }
            current_.pop_back();
            if (aborted_ || done_) return;
            p.reset(static_cast<std::size_t>(v));
        }
    }

    const std::vector<Bitset>& adj_;
    std::size_t cap_;
    std::uint64_t budget_;
    std::uint64_t& nodes_;
    std::vector<int>& best_;
    std::vector<int> current_;
    bool aborted_ = false, done_ = false;
};

}  // namespace

IncoherentSearch find_max_incoherent(const TwoGraph& t, std::size_t cap, std::uint64_t budget) {
    const int n = t.size();
    IncoherentSearch out;
    if (cap == 0) cap = static_cast<std::size_t>(n);
    if (n <= 2 || cap <= 2) {
        for (int i = 0; i < std::min<int>(n, static_cast<int>(std::min<std::size_t>(cap, 2))); ++i)
            out.best.push_back(i);
        out.complete = true;
        out.reached_cap = out.best.size() >= cap;
        return out;
    }
    out.best = {0, 1};
    const auto un = static_cast<std::size_t>(n);
    std::vector<Bitset> adj(un, Bitset(un));
    for (int r = 0; r < n; ++r) {
        if (out.best.size() >= static_cast<std::size_t>(n - r)) break;
        // i ~ j iff {r,i,j} is incoherent; a clique with r is then incoherent throughout
        for (int i = r + 1; i < n; ++i) {
            Bitset& a = adj[static_cast<std::size_t>(i)];
            a = t.s_set_bits(r, i);
            a.flip_all();
            for (int j = 0; j <= r; ++j) a.reset(static_cast<std::size_t>(j));
            a.reset(static_cast<std::size_t>(i));
        }
        Bitset cand(un);
        for (int j = r + 1; j < n; ++j) cand.set(static_cast<std::size_t>(j));
        CliqueSearch search(adj, cap, budget, out.nodes, out.best);
        search.run(r, cand);
        if (search.aborted()) {
            std::sort(out.best.begin(), out.best.end());
            out.complete = false;
            return out;
        }
        if (search.done()) break;
    }
    std::sort(out.best.begin(), out.best.end());
    out.complete = true;
    out.reached_cap = out.best.size() >= cap;
    return out;
}

IncoherentSearch find_max_incoherent(const LineSystem& lines, std::size_t cap, std::uint64_t budget) {
    if (cap == 0) cap = lines.span_dim();
    return find_max_incoherent(from_lines(lines), cap, budget);
}

std::optional<std::vector<int>> lex_least_incoherent(const TwoGraph& t, std::size_t size) {
    const int n = t.size();
    const auto un = static_cast<std::size_t>(n);
    if (size > un) return std::nullopt;
    std::vector<int> chosen;
    std::function<bool(Bitset)> dfs = [&](Bitset cand) -> bool {
        if (chosen.size() == size) return true;
        for (std::size_t v = cand.first(); v < un; v = cand.next(v + 1)) {
            if (chosen.size() + cand.count() < size) return false;
            Bitset next = cand;
            for (std::size_t u = 0; u <= v; ++u) next.reset(u);
            for (int x : chosen) next.and_not(t.s_set_bits(x, static_cast<int>(v)));
            chosen.push_back(static_cast<int>(v));
            if (dfs(std::move(next))) return true;
            chosen.pop_back();
            cand.reset(v);
        }
        return false;
    };
    Bitset all(un);
    all.set_all();
    if (dfs(all)) return chosen;
    return std::nullopt;
}

GammaPartition gamma_partition(const TwoGraph& t, const std::vector<int>& gamma_set, int gamma) {
    if (std::find(gamma_set.begin(), gamma_set.end(), gamma) != gamma_set.end())
        throw std::invalid_argument("external line lies in the incoherent set");
    const std::size_t g = gamma_set.size();
    std::size_t a1 = g;
    for (std::size_t i = 0; i < g && a1 == g; ++i)
        for (std::size_t j = i + 1; j < g; ++j)
            if (t.coherent(gamma, gamma_set[i], gamma_set[j])) {
                a1 = i;
                break;
            }
    if (a1 == g) throw NotMaximal("line " + std::to_string(gamma) + " forms no coherent triple with the set");
    std::vector<int> with, without;
    for (std::size_t i = 0; i < g; ++i) {
        if (i == a1 || !t.coherent(gamma, gamma_set[a1], gamma_set[i])) with.push_back(gamma_set[i]);
        else without.push_back(gamma_set[i]);
    }
    // dichotomy: different parts exactly when the triple with gamma is coherent
    auto same = [&](const std::vector<int>& part, int x) {
        return std::find(part.begin(), part.end(), x) != part.end();
    };
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = i + 1; j < g; ++j) {
            const int x = gamma_set[i], y = gamma_set[j];
            const bool split = same(with, x) != same(with, y);
            if (split != t.coherent(gamma, x, y))
                throw std::logic_error("partition dichotomy fails for line " + std::to_string(gamma));
        }
    std::sort(with.begin(), with.end());
    std::sort(without.begin(), without.end());
    GammaPartition p;
    p.gamma = gamma;
    if (with.size() < without.size() || (with.size() == without.size() && with < without)) {
        p.part1 = std::move(with);
        p.part2 = std::move(without);
    } else {
        p.part1 = std::move(without);
        p.part2 = std::move(with);
    }
    return p;
}

namespace {

std::vector<int> outside(int n, const std::vector<int>& gamma_set) {
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (int x : gamma_set) in[static_cast<std::size_t>(x)] = 1;
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (!in[static_cast<std::size_t>(i)]) out.push_back(i);
    return out;
}

std::vector<GammaPartition> all_partitions(const TwoGraph& t, const std::vector<int>& gamma_set) {
    std::vector<GammaPartition> parts;
    for (int x : outside(t.size(), gamma_set)) parts.push_back(gamma_partition(t, gamma_set, x));
    return parts;
}

int overlap(const std::vector<int>& a, const std::vector<int>& b) {
    int c = 0;
    for (int x : a)
        if (std::binary_search(b.begin(), b.end(), x)) ++c;
    return c;
}

}  // namespace

CheckResult taylor_size_check(const LineSystem& lines, const TwoGraph& t, const std::vector<int>& gamma_set) {
    CheckResult r{"taylor_size", true, "", {}};
    const auto d = static_cast<long>(gamma_set.size());
    if (gamma_set.size() != lines.span_dim()) {
        r.ok = false;
        r.detail = "incoherent set size differs from the dimension";
        return r;
    }
    const QuadScalar rho = lines.rho();
    const QuadScalar c = (rho - 1) * (rho - 1) * (QuadScalar(d) + rho);
    auto poly = [&](long x) { return QuadScalar(4 * x * x - 4 * d * x) + c; };
    for (const auto& p : all_partitions(t, gamma_set)) {
        const long x1 = static_cast<long>(p.part1.size()), x2 = static_cast<long>(p.part2.size());
        if (!poly(x1).is_zero() || !poly(x2).is_zero()) {
            r.ok = false;
            r.detail = "part sizes " + std::to_string(x1) + "," + std::to_string(x2) + " are not roots";
            r.witness = {p.gamma};
            return r;
        }
    }
    r.detail = "all part sizes are roots of 4x^2-4dx+(rho-1)^2(d+rho)";
    return r;
}

CheckResult taylor_vector_check(const LineSystem& lines, const TwoGraph& t, const std::vector<int>& gamma_set,
                                int gamma) {
    CheckResult r{"taylor_vector", true, "", {gamma}};
    const GammaPartition p = gamma_partition(t, gamma_set, gamma);
    const QuadScalar rho = lines.rho();
    const long d = static_cast<long>(gamma_set.size());
    const long k = static_cast<long>(p.part1.size());
    const QuadScalar den = (rho - 1) * (QuadScalar(d) + rho - 1);
    const QuadScalar c1 = (QuadScalar(2 * d - 2 * k) + rho - 1) / den;
    const QuadScalar c2 = (QuadScalar(2 * k) + rho - 1) / den;
    const auto anchor = static_cast<std::size_t>(gamma_set.front());
    auto signed_sum = [&](const std::vector<int>& part) {
        QuadVector s(static_cast<std::size_t>(lines.dim()));
        for (int x : part) {
            const auto ux = static_cast<std::size_t>(x);
            const int sg = ux == anchor ? 1 : lines.sign(anchor, ux);
            for (std::size_t i = 0; i < s.size(); ++i) s[i] += QuadScalar(sg) * lines.vector(ux)[i];
        }
        return s;
    };
    const QuadVector a = signed_sum(p.part1), b = signed_sum(p.part2);
    QuadVector expr(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) expr[i] = c1 * a[i] - c2 * b[i];
    const QuadVector& v = lines.vector(static_cast<std::size_t>(gamma));
    bool plus = true, minus = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
        plus = plus && v[i] == expr[i];
        minus = minus && v[i] == -expr[i];
    }
    r.ok = plus || minus;
    r.detail = "coefficients " + c1.str() + " and -" + c2.str() + (r.ok ? " reproduce" : " do not reproduce") +
               " the line";
    return r;
}

CheckResult taylor_intersection_check(const LineSystem& lines, const TwoGraph& t,
                                      const std::vector<int>& gamma_set) {
    CheckResult r{"taylor_intersection", true, "", {}};
    const auto parts = all_partitions(t, gamma_set);
    const QuadScalar rho = lines.rho();
    const QuadScalar delta_a = (rho - 1) * (rho - 1) / QuadScalar(4);
    const QuadScalar delta_b = (rho * rho - 1) / QuadScalar(4);
    auto allowed = [&](long k, long x) {
        const QuadScalar gap = QuadScalar(k - x);
        return gap == delta_a || gap == delta_b;
    };
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            const long k = static_cast<long>(parts[i].part1.size());
            const long x = overlap(parts[i].part1, parts[j].part1);
            bool ok = allowed(k, x);
            if (!ok && parts[i].balanced()) ok = allowed(k, overlap(parts[i].part1, parts[j].part2));
            if (!ok) {
                r.ok = false;
                r.witness = {parts[i].gamma, parts[j].gamma};
                r.detail = "intersection " + std::to_string(x) + " outside the allowed pair";
                return r;
            }
        }
    r.detail = "all intersections equal k-(rho-1)^2/4 or k-(rho^2-1)/4";
    return r;
}

IncoherentDesign incoherent_design(const LineSystem& lines, const TwoGraph& t, const std::vector<int>& gamma_set) {
    const auto reg = regularity(t);
    const auto* rp = regular_params(reg);
    if (!rp) throw NotRegularError(std::get<NotRegular>(reg).reason);
    if (gamma_set.size() != lines.span_dim()) throw NoWitness("incoherent set size differs from the dimension");
    std::map<int, int> position;
    for (std::size_t i = 0; i < gamma_set.size(); ++i) position[gamma_set[i]] = static_cast<int>(i);
    const auto parts = all_partitions(t, gamma_set);
    if (parts.empty()) throw NoWitness("no external lines");
    IncoherentDesign out;
    out.balanced = parts.front().balanced();
    const std::size_t k = parts.front().part1.size();
    for (const auto& p : parts)
        if (p.part1.size() != k) throw NoWitness("part sizes vary between external lines");
    if (k < (out.balanced ? 3u : 2u))
        throw NotApplicable("parts of size " + std::to_string(k) + " are too small for the design statement");
    auto to_block = [&](const std::vector<int>& part) {
        Block b;
        for (int x : part) b.push_back(position.at(x));
        return b;
    };
    std::vector<Block> blocks;
    for (const auto& p : parts) {
        blocks.push_back(to_block(p.part1));
        if (out.balanced) blocks.push_back(to_block(p.part2));
    }
    const int d = static_cast<int>(gamma_set.size());
    out.blocks = BlockSet(d, std::move(blocks));
    out.cert = certify_design(out.blocks, out.balanced ? 3 : 2);
    out.three_design = out.cert.t >= 3;
    const QuadScalar rho = lines.rho();
    const Rational kk(static_cast<long>(k));
    if (!out.balanced) {
        out.expected_lambda = kk * (kk - 1) / (lines.rho_sq() - Rational(d));
        const QuadScalar s1 = QuadScalar(kk) - (rho - 1) * (rho - 1) / QuadScalar(4);
        const QuadScalar s2 = QuadScalar(kk) - (rho * rho - 1) / QuadScalar(4);
        out.expected_s1 = s1.rat();
        out.expected_s2 = s2.rat();
        out.matches_expected = s1.is_rational() && s2.is_rational() && out.cert.quasi_symmetric() &&
                               Rational(out.cert.lambdas.at(2)) == out.expected_lambda &&
                               Rational(out.cert.s1()) == out.expected_s1 && Rational(out.cert.s2()) == out.expected_s2;
    } else {
        out.expected_lambda = Rational(rp->n - d) - Rational(Integer(3 * rp->a), Integer(2));
        out.matches_expected = out.three_design && Rational(out.cert.lambdas.at(3)) == out.expected_lambda;
        out.derived = derived_design(out.blocks, 0);
        out.residual = residual_design(out.blocks, 0);
        out.derived_cert = certify_design(*out.derived, 2);
        out.residual_cert = certify_design(*out.residual, 2);
        out.matches_expected = out.matches_expected && out.derived_cert->quasi_symmetric() &&
                               out.residual_cert->quasi_symmetric();
    }
    return out;
}

std::vector<CheckResult> setsum_checks(const TwoGraph& t, const std::vector<int>& gamma_set) {
    const auto reg = regularity(t);
    const auto* rp = regular_params(reg);
    if (!rp) throw NotRegularError(std::get<NotRegular>(reg).reason);
    const Rational n(rp->n), a(rp->a), g(static_cast<long>(gamma_set.size()));
    const auto parts = all_partitions(t, gamma_set);
    std::vector<CheckResult> out;
    auto record = [&](const std::string& name, const Rational& got, const Rational& want, std::vector<int> w) {
        for (auto& c : out)
            if (c.name == name) {
                if (c.ok && !(got == want)) {
                    c.ok = false;
                    c.detail = "got " + got.str() + ", expected " + want.str();
                    c.witness = std::move(w);
                }
                return;
            }
        CheckResult c{name, got == want, "expected " + want.str(), {}};
        if (!c.ok) {
            c.detail = "got " + got.str() + ", expected " + want.str();
            c.witness = std::move(w);
        }
        out.push_back(std::move(c));
    };
    auto part_with = [](const GammaPartition& p, int x) -> const std::vector<int>& {
        return std::binary_search(p.part1.begin(), p.part1.end(), x) ? p.part1 : p.part2;
    };
    auto part_without = [](const GammaPartition& p, int x) -> const std::vector<int>& {
        return std::binary_search(p.part1.begin(), p.part1.end(), x) ? p.part2 : p.part1;
    };
    Rational taylor(0);
    for (const auto& p : parts) taylor += Rational(static_cast<long>(p.part1.size() * p.part2.size()));
    record("taylor_product_sum", taylor, a * g * (g - 1) / 2, {});
    const Rational three_a_half = Rational(3) * a / 2;
    for (int alpha : gamma_set) {
        Rational in1(0), out1(0), in2(0), out2(0);
        for (const auto& p : parts) {
            const Rational x(static_cast<long>(part_with(p, alpha).size()));
            const Rational y(static_cast<long>(part_without(p, alpha).size()));
            in1 += x;
            out1 += y;
            in2 += x * x;
            out2 += y * y;
        }
        record("sum_in", in1, (n - g - a) * g + a, {alpha});
        record("sum_notin", out1, a * (g - 1), {alpha});
        record("sum_in_squared", in2, (n - g - three_a_half) * g * g + three_a_half * g, {alpha});
        record("sum_notin_squared", out2, a * g * (g - 1) / 2, {alpha});
        for (int beta : gamma_set) {
            if (beta == alpha) continue;
            const Bitset& s = t.s_set_bits(alpha, beta);
            Rational s_in(0), s_out(0), r_in(0), r_out(0);
            for (const auto& p : parts) {
                const Rational x(static_cast<long>(part_with(p, alpha).size()));
                const Rational y(static_cast<long>(part_without(p, alpha).size()));
                if (s.test(static_cast<std::size_t>(p.gamma))) {
                    s_in += x;
                    s_out += y;
                } else {
                    r_in += x;
                    r_out += y;
                }
            }
            record("sum_in_over_s", s_in, a * g / 2, {alpha, beta});
            record("sum_notin_over_s", s_out, a * g / 2, {alpha, beta});
            record("sum_in_off_s", r_in, (n - g - three_a_half) * g + a, {alpha, beta});
            record("sum_notin_off_s", r_out, a * (g - 2) / 2, {alpha, beta});
        }
    }
    return out;
}

FourSumReport foursum_check(const TwoGraph& t, const std::vector<int>& gamma_set) {
    const auto reg = regularity(t);
    const auto* rp = regular_params(reg);
    if (!rp) throw NotRegularError(std::get<NotRegular>(reg).reason);
    const auto parts = all_partitions(t, gamma_set);
    if (parts.empty()) throw NoWitness("no external lines");
    const long k = static_cast<long>(parts.front().part1.size());
    for (const auto& p : parts)
        if (static_cast<long>(p.part1.size()) != k) throw NoWitness("part sizes vary between external lines");
    const long d = static_cast<long>(gamma_set.size());
    FourSumReport rep;
    rep.expected_sum = Integer(rp->a) * (d - k - 1) * (k - 1);
    if (d > 3) rep.predicted_constant = Rational(2 * rep.expected_sum, Integer((d - 2) * (d - 3)));
    rep.constant = true;
    const std::size_t g = gamma_set.size();
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = i + 1; j < g; ++j) {
            const Bitset& sab = t.s_set_bits(gamma_set[i], gamma_set[j]);
            Integer total = 0;
            for (std::size_t e = 0; e < g; ++e) {
                if (e == i || e == j) continue;
                for (std::size_t f = e + 1; f < g; ++f) {
                    if (f == i || f == j) continue;
                    const auto c = static_cast<unsigned long>(and_count(sab, t.s_set_bits(gamma_set[e], gamma_set[f])));
                    total += c;
                    if (!rep.value) rep.value = Integer(c);
                    else if (*rep.value != c && rep.constant) {
                        rep.constant = false;
                        rep.witness = {gamma_set[i], gamma_set[j], gamma_set[e], gamma_set[f]};
                    }
                }
            }
            if (total != rep.expected_sum && rep.sums_ok) {
                rep.sums_ok = false;
                rep.witness = {gamma_set[i], gamma_set[j]};
            }
        }
    if (!rep.constant) rep.value.reset();
    return rep;
}

SphericalDesignReport spherical_design_check(const LineSystem& lines, int t) {
    if (t < 1) throw std::invalid_argument("design strength must be positive");
    SphericalDesignReport rep;
    const std::size_t n = lines.size();
    const auto d = static_cast<long>(lines.span_dim());
    rep.points = 2 * n;
    const QuadScalar inv_norm = QuadScalar(1) / lines.norm_sq();
    std::vector<QuadScalar> sums(static_cast<std::size_t>(t) + 1);
    // X = {+u_i, -u_i}; every ordered pair (x, y) of X is visited.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const QuadScalar c = lines.gram()(i, j) * inv_norm;
            QuadScalar pw(1);
            for (int k = 1; k <= t; ++k) {
                pw *= c;
                const QuadScalar neg = (k % 2) ? -pw : pw;
                auto& s = sums[static_cast<std::size_t>(k)];
                s += pw;   // (+u_i, +u_j)
                s += neg;  // (+u_i, -u_j)
                s += neg;  // (-u_i, +u_j)
                s += pw;   // (-u_i, -u_j)
            }
        }
    const Rational x2 = Rational(static_cast<long>(rep.points * rep.points));
    rep.passes = true;
    for (int k = 1; k <= t; ++k) {
        Rational target(0);
        if (k % 2 == 0) {
            Rational num(1), den(1);
            for (int j = k - 1; j > 0; j -= 2) num *= j;
            for (int j = 0; j < k / 2; ++j) den *= Rational(d + 2 * j);
            target = x2 * num / den;
        }
        rep.moments.push_back({k, sums[static_cast<std::size_t>(k)], QuadScalar(target)});
        rep.passes = rep.passes && sums[static_cast<std::size_t>(k)] == QuadScalar(target);
    }
    if (t % 2 == 1) {
        const long e = (t - 1) / 2;
        rep.tight_count = 2 * binomial(d + e - 1, d - 1);
        rep.tight = rep.passes && Integer(static_cast<unsigned long>(rep.points)) == rep.tight_count;
    }
    return rep;
}

}  // namespace eqlab
