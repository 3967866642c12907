#include "eqlab/linesys.hpp"

#include "eqlab/parallel.hpp"

#include <json.hpp>

#include <algorithm>

namespace eqlab {

namespace {

void require_rational_form(const ExactMatrix& g, int dim) {
    if (g.rows() != static_cast<std::size_t>(dim) || g.cols() != static_cast<std::size_t>(dim))
        throw std::invalid_argument("form must be dim x dim");
    if (!g.is_rational()) throw std::invalid_argument("form must have rational entries");
    if (!g.is_positive_definite()) throw std::invalid_argument("form must be symmetric positive definite");
}

}  // namespace

QuadScalar LineSystem::inner(const QuadVector& u, const QuadVector& v) const {
    if (!form_) return inner_product(u, v);
    return inner_product(u, form_->apply(v));
}

LineSystem LineSystem::certify(int dim, std::vector<QuadVector> vectors, std::optional<ExactMatrix> form) {
    if (dim < 1) throw std::invalid_argument("dimension must be positive");
    if (form) require_rational_form(*form, dim);
    LineSystem s;
    s.dim_ = dim;
    s.vectors_ = std::move(vectors);
    s.form_ = std::move(form);
    QuadVector all;
    for (const auto& v : s.vectors_) {
        if (v.size() != static_cast<std::size_t>(dim)) throw LengthMismatch("vector length differs from dim");
        if (std::all_of(v.begin(), v.end(), [](const QuadScalar& x) { return x.is_zero(); }))
            throw NotEquiangular("zero vector");
        all.insert(all.end(), v.begin(), v.end());
    }
    s.radicand_ = common_radicand(all);

    const std::size_t n = s.vectors_.size();
    {
        std::vector<QuadVector> images;
        if (s.form_) {
            images.resize(n);
            parallel_for(n, [&](std::size_t i) { images[i] = s.form_->apply(s.vectors_[i]); });
        }
        const auto& right = s.form_ ? images : s.vectors_;
        s.gram_ = ExactMatrix(n, n);
        parallel_for(n, [&](std::size_t i) {
            for (std::size_t j = i; j < n; ++j) s.gram_(i, j) = inner_product(s.vectors_[i], right[j]);
        });
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) s.gram_(i, j) = s.gram_(j, i);
    }
    if (n == 0) throw NotEquiangular("empty line system");
    s.norm_sq_ = s.gram_(0, 0);
    for (std::size_t i = 1; i < n; ++i)
        if (!(s.gram_(i, i) == s.norm_sq_)) throw NotEquiangular("representatives have unequal norms");
    if (n >= 2) {
        const QuadScalar& g01 = s.gram_(0, 1);
        if (g01.is_zero()) throw NotEquiangular("orthogonal lines 0 and 1");
        const QuadScalar r2 = s.norm_sq_ * s.norm_sq_ / (g01 * g01);
        if (!r2.is_rational()) throw NotEquiangular("irrational rho^2");
        s.rho_sq_ = r2.rat();
        if (s.rho_sq_ <= Rational(1)) throw NotEquiangular("parallel lines");
        const QuadScalar target = s.norm_sq_ * s.norm_sq_;
        std::vector<long> bad(n, -1);
        parallel_for(n, [&](std::size_t i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const QuadScalar& g = s.gram_(i, j);
                if (!(g * g * QuadScalar(s.rho_sq_) == target)) {
                    bad[i] = static_cast<long>(j);
                    return;
                }
            }
        });
        for (std::size_t i = 0; i < n; ++i)
            if (bad[i] >= 0)
                throw NotEquiangular("lines " + std::to_string(i) + " and " + std::to_string(bad[i]) +
                                     " break the common angle");
        s.rho_ = QuadScalar::sqrt_of(s.rho_sq_, QuadScalar::radicand_for(s.rho_sq_));
    }
    s.span_dim_ = ExactMatrix::from_rows(s.vectors_).rank();
    return s;
}

LineSystem LineSystem::subsystem(const std::vector<int>& indices) const {
    std::vector<QuadVector> vs;
    vs.reserve(indices.size());
    for (int i : indices) vs.push_back(vectors_.at(static_cast<std::size_t>(i)));
    return certify(dim_, std::move(vs), form_);
}

LineSystem LineSystem::with_vector(const QuadVector& v) const {
    auto vs = vectors_;
    vs.push_back(v);
    return certify(dim_, std::move(vs), form_);
}

TwoGraph from_lines(const LineSystem& lines) {
    const int n = static_cast<int>(lines.size());
    SimpleGraph neg(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (lines.sign(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) < 0) neg.add_edge(i, j);
    return TwoGraph::from_graph(neg);
}

// --- JSON --------------------------------------------------------------------

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json scalar_json(const QuadScalar& x, bool pair) {
    if (!pair) return x.rat().str();
    return ordered_json::array({x.rat().str(), x.coeff().str()});
}

QuadScalar scalar_from_json(const ordered_json& j, const Rational& radicand) {
    if (j.is_string()) return QuadScalar(Rational::parse(j.get<std::string>()));
    if (j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_string())
        return QuadScalar(Rational::parse(j[0].get<std::string>()), Rational::parse(j[1].get<std::string>()),
                          radicand);
    throw CorruptLineSystem("scalar must be \"p/q\" or [\"p/q\",\"p/q\"]");
}

}  // namespace

std::string LineSystem::to_json() const {
    ordered_json out;
    out["dim"] = dim_;
    out["radicand"] = radicand_.str();
    out["norm_sq"] = scalar_json(norm_sq_, !norm_sq_.is_rational());
    out["rho"] = scalar_json(rho_, !rho_.is_rational());
    ordered_json vs = ordered_json::array();
    for (const auto& v : vectors_) {
        ordered_json row = ordered_json::array();
        for (const auto& x : v) row.push_back(scalar_json(x, true));
        vs.push_back(std::move(row));
    }
    out["vectors"] = std::move(vs);
    if (form_) {
        ordered_json g = ordered_json::array();
        for (std::size_t i = 0; i < form_->rows(); ++i) {
            ordered_json row = ordered_json::array();
            for (std::size_t j = 0; j < form_->cols(); ++j) row.push_back((*form_)(i, j).rat().str());
            g.push_back(std::move(row));
        }
        out["form"] = std::move(g);
    }
    return out.dump() + "\n";
}

LineSystem LineSystem::from_json(std::string_view text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw CorruptLineSystem(std::string("malformed JSON: ") + e.what());
    }
    try {
        for (const char* key : {"dim", "radicand", "norm_sq", "rho", "vectors"})
            if (!j.contains(key)) throw CorruptLineSystem(std::string("missing field \"") + key + "\"");
        if (!j["dim"].is_number_integer()) throw CorruptLineSystem("dim must be an integer");
        const int dim = j["dim"].get<int>();
        const Rational radicand = Rational::parse(j["radicand"].get<std::string>());
        std::vector<QuadVector> vectors;
        for (const auto& row : j["vectors"]) {
            if (!row.is_array()) throw CorruptLineSystem("vector must be an array");
            QuadVector v;
            for (const auto& x : row) v.push_back(scalar_from_json(x, radicand));
            vectors.push_back(std::move(v));
        }
        std::optional<ExactMatrix> form;
        if (j.contains("form")) {
            std::vector<RationalVector> rows;
            for (const auto& row : j["form"]) {
                RationalVector r;
                for (const auto& x : row) r.push_back(Rational::parse(x.get<std::string>()));
                rows.push_back(std::move(r));
            }
            form = ExactMatrix::from_rows(rows);
        }
        LineSystem s = certify(dim, std::move(vectors), std::move(form));
        if (!(s.radicand_ == radicand) && !s.radicand_.is_zero())
            throw CorruptLineSystem("declared radicand does not match the entries");
        if (!(scalar_from_json(j["norm_sq"], radicand) == s.norm_sq_))
            throw CorruptLineSystem("declared norm_sq does not match the vectors");
        if (s.size() >= 2 && !(scalar_from_json(j["rho"], s.rho_.radicand()) == s.rho_))
            throw CorruptLineSystem("declared rho does not match the vectors");
        s.radicand_ = radicand;
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw CorruptLineSystem(std::string("bad field type: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw CorruptLineSystem(e.what());
    } catch (const std::domain_error& e) {
        throw CorruptLineSystem(e.what());
    }
}

// --- constructions -------------------------------------------------------------

namespace {

struct QsParams {
    int d, k, s1, s2;
};

QsParams two_intersection_params(const BlockSet& bs) {
    const auto inter = bs.intersection_numbers();
    if (inter.size() != 2)
        throw NotQuasiSymmetric("block set needs exactly two intersection numbers, has " +
                                std::to_string(inter.size()));
    return {bs.point_count(), bs.block_size(), inter[0], inter[1]};
}

QuadVector block_vector(const Block& b, int d, const QuadScalar& on, const QuadScalar& off) {
    QuadVector v(static_cast<std::size_t>(d), off);
    for (int p : b) v[static_cast<std::size_t>(p)] = on;
    return v;
}

}  // namespace

LineSystem construct_omega(const BlockSet& bs, int epsilon) {
    if (epsilon != 1 && epsilon != -1) throw std::invalid_argument("epsilon must be +1 or -1");
    const QsParams p = two_intersection_params(bs);
    const Rational delta1 = Rational(p.k * p.k) - Rational(Integer(p.d * (p.s1 + p.s2)), Integer(2));
    if (delta1.sign() < 0) throw NegativeDelta1("Delta1 = " + delta1.str() + " < 0");
    if (2 * p.k == p.s1 + p.s2) throw DegenerateAngle("2k = s1 + s2");
    const QuadScalar root = QuadScalar::sqrt_of(delta1, QuadScalar::radicand_for(delta1)) * QuadScalar(epsilon);
    const QuadScalar on = QuadScalar(p.d - p.k) + root, off = QuadScalar(-p.k) + root;
    std::vector<QuadVector> vs;
    vs.reserve(bs.size());
    for (const auto& b : bs.blocks()) vs.push_back(block_vector(b, p.d, on, off));
    LineSystem s = LineSystem::certify(p.d, std::move(vs));
    if (s.size() >= 2) {
        const Rational kappa(Integer(p.s1 - p.s2), Integer(2 * p.k - p.s1 - p.s2));
        if (!(s.rho_sq() * kappa * kappa == Rational(1)))
            throw NotEquiangular("common angle differs from (s1-s2)/(2k-s1-s2)");
    }
    return s;
}

AugmentedSystem construct_augmented(const BlockSet& bs) {
    const QsParams p = two_intersection_params(bs);
    const int m = p.s1 - p.s2;
    const Rational d_expected = Rational(Integer((m * m + m + p.s1) * (m * m + m + p.s1)), Integer(p.s1)) - 2 * m;
    if (!(d_expected == Rational(p.d)) || p.k != m * m + p.s1)
        throw ParameterMismatch("(d,k) = (" + std::to_string(p.d) + "," + std::to_string(p.k) +
                                ") differ from the closed forms at (s1,s2) = (" + std::to_string(p.s1) + "," +
                                std::to_string(p.s2) + ")");
    const Rational ratio(Integer(m), Integer(2 * p.s1));
    const Rational delta2(Integer(m * (2 * m + p.d)), Integer(2));
    const Rational scale(m * m - p.s2);
    QuadScalar delta(0);
    Rational radicand(0);
    if (!scale.is_zero()) {
        radicand = QuadScalar::radicand_for(ratio);
        delta = QuadScalar::sqrt_of(ratio, radicand) * QuadScalar(scale);
    }
    if (radicand.is_zero()) radicand = QuadScalar::radicand_for(delta2);
    const QuadScalar root2 = QuadScalar::sqrt_of(delta2, radicand);

    std::vector<QuadVector> vs;
    const QuadScalar on = QuadScalar(p.d - p.k) + delta, off = QuadScalar(-p.k) + delta;
    for (const auto& b : bs.blocks()) vs.push_back(block_vector(b, p.d, on, off));
    const QuadScalar self = QuadScalar(m * (p.d - 1)) - root2, other = QuadScalar(-m) - root2;
    AugmentedSystem out{LineSystem(), {}};
    for (int i = 0; i < p.d; ++i) {
        out.witness.push_back(static_cast<int>(vs.size()));
        vs.push_back(block_vector({i}, p.d, self, other));
    }
    out.lines = LineSystem::certify(p.d, std::move(vs));
    if (!(out.lines.rho() == QuadScalar(2 * m + 1)))
        throw NotEquiangular("augmented system angle differs from 1/(2m+1)");
    return out;
}

LineSystem augment_all_ones(const LineSystem& lines) {
    if (!lines.norm_sq().is_rational()) throw NotEquiangular("all-ones augmentation needs a rational norm");
    const Rational c2 = lines.norm_sq().rat() / Rational(lines.dim());
    Rational radicand = lines.radicand();
    if (radicand.is_zero()) radicand = QuadScalar::radicand_for(c2);
    const QuadScalar c = QuadScalar::sqrt_of(c2, radicand);
    return lines.with_vector(QuadVector(static_cast<std::size_t>(lines.dim()), c));
}

LineSystem sts15_plus_one() { return augment_all_ones(construct_omega(pg32_sts15())); }

LineSystem icosahedron_lines() {
    const Rational five(5);
    const QuadScalar phi2(Rational(1), Rational(1), five);  // 1 + sqrt 5
    const QuadScalar z(0), two(2);
    std::vector<QuadVector> vs{
        {z, two, phi2}, {z, -two, phi2}, {two, phi2, z}, {-two, phi2, z}, {phi2, z, two}, {phi2, z, -two}};
    return LineSystem::certify(3, std::move(vs));
}

LineSystem hexagon_lines() {
    const QuadScalar r3(Rational(0), Rational(1), Rational(3));
    std::vector<QuadVector> vs{{QuadScalar(2), QuadScalar(0)}, {QuadScalar(1), r3}, {QuadScalar(-1), r3}};
    return LineSystem::certify(2, std::move(vs));
}

// --- bounds ----------------------------------------------------------------------

BoundsReport bounds_report(const LineSystem& lines, std::optional<std::size_t> inc) {
    BoundsReport r;
    r.lines = lines.size();
    r.ambient_dim = lines.dim();
    r.span_dim = lines.span_dim();
    r.rho_sq = lines.rho_sq();
    const auto d = static_cast<long>(r.span_dim);
    const auto n = static_cast<long>(r.lines);
    r.absolute_bound = Integer(d) * (d + 1) / 2;
    r.absolute_saturated = Integer(n) == r.absolute_bound;
    if (r.lines >= 2) {
        r.relative_applicable = r.rho_sq > Rational(d);
        if (r.relative_applicable) {
            r.relative_bound = Rational(d) * (r.rho_sq - 1) / (r.rho_sq - Rational(d));
            r.relative_saturated = r.relative_bound == Rational(n);
        } else {
            r.notes.push_back("relative bound not applicable: rho^2 <= d");
        }
        r.rho_odd_integer = lines.rho_is_integer() && lines.rho().rat().num() % 2 != 0;
    }
    r.neumann_applicable = n > 2 * d;
    if (r.neumann_applicable) r.neumann_ok = r.rho_odd_integer;
    else r.notes.push_back("odd-rho parity check not applicable: n <= 2d");
    if (inc) {
        r.inc = inc;
        r.inc_within_bound = *inc <= r.span_dim;
    }
    return r;
}

}  // namespace eqlab
