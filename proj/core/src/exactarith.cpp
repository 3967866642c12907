#include "eqlab/exactarith.hpp"

#include <algorithm>
#include <utility>

namespace eqlab {

Rational::Rational(const Integer& num, const Integer& den) : q_(num, den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_.canonicalize();
}

Rational::Rational(const mpq_class& q) : q_(q) {
    if (q_.get_den() == 0) throw std::domain_error("rational with zero denominator");
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    auto parse_int = [&](std::string_view s) {
        std::size_t i = 0;
        if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) throw std::invalid_argument("malformed rational: " + std::string(text));
        for (std::size_t j = i; j < s.size(); ++j)
            if (s[j] < '0' || s[j] > '9')
                throw std::invalid_argument("malformed rational: " + std::string(text));
        std::string digits(s[0] == '+' ? s.substr(1) : s);
        return Integer(digits, 10);
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    const Integer den = parse_int(text.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("non-positive denominator: " + std::string(text));
    return Rational(parse_int(text.substr(0, slash)), den);
}

Rational Rational::abs() const {
    Rational r;
    r.q_ = ::abs(q_);
    return r;
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    Rational r;
    mpq_inv(r.q_.get_mpq_t(), q_.get_mpq_t());
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::operator-() const {
    Rational r;
    r.q_ = -q_;
    return r;
}

Integer isqrt(const Integer& n) {
    if (n < 0) throw std::domain_error("isqrt of negative integer");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Integer& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool rational_sqrt(const Rational& q, Rational& root) {
    if (q.sign() < 0) return false;
    const Integer n = q.num(), d = q.den();
    if (!is_square(n) || !is_square(d)) return false;
    root = Rational(isqrt(n), isqrt(d));
    return true;
}

Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Rational pow(const Rational& base, unsigned exponent) {
    Rational r(1);
    for (unsigned i = 0; i < exponent; ++i) r *= base;
    return r;
}

QuadScalar::QuadScalar(const Rational& rat, const Rational& coeff, const Rational& radicand)
    : rat_(rat), coeff_(coeff), radicand_(radicand) {
    normalize();
}

void QuadScalar::normalize() {
    if (radicand_.sign() < 0) throw std::invalid_argument("negative radicand");
    Rational root;
    if (rational_sqrt(radicand_, root)) {
        rat_ += coeff_ * root;
        coeff_ = Rational(0);
        radicand_ = Rational(0);
    }
}

Rational QuadScalar::radicand_for(const Rational& q) {
    if (q.sign() < 0) throw std::domain_error("square root of negative rational");
    Rational root;
    if (rational_sqrt(q, root)) return Rational(0);
    Integer m = q.num() * q.den();
    for (unsigned long p = 2; p * p <= 1000000 && p * p <= m; ++p) {
        const Integer sq = Integer(p) * p;
        while (m % sq == 0) m /= sq;
    }
    return Rational(m);
}

QuadScalar QuadScalar::sqrt_of(const Rational& q, const Rational& radicand) {
    if (q.sign() < 0) throw std::domain_error("square root of negative rational");
    Rational root;
    QuadScalar out;
    out.radicand_ = radicand;
    if (rational_sqrt(q, root)) {
        out.rat_ = root;
        out.normalize();
        return out;
    }
    if (radicand.is_zero() || !rational_sqrt(q / radicand, root))
        throw RadicandMismatch("sqrt(" + q.str() + ") is not in Q(sqrt(" + radicand.str() + "))");
    out.coeff_ = root;
    out.normalize();
    return out;
}

int QuadScalar::sign() const {
    const int sa = rat_.sign(), sb = coeff_.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // opposite signs: compare a^2 with b^2 D
    const int c = cmp(rat_.value() * rat_.value(), coeff_.value() * coeff_.value() * radicand_.value());
    return c > 0 ? sa : sb;
}

QuadScalar QuadScalar::conjugate() const {
    QuadScalar r(*this);
    r.coeff_ = -coeff_;
    return r;
}

Rational QuadScalar::field_norm() const {
    return rat_ * rat_ - coeff_ * coeff_ * radicand_;
}

std::string QuadScalar::str() const {
    if (coeff_.is_zero()) return rat_.str();
    std::string s = rat_.is_zero() ? "" : rat_.str();
    if (!rat_.is_zero() && coeff_.sign() > 0) s += "+";
    return s + coeff_.str() + "*sqrt(" + radicand_.str() + ")";
}

const Rational& QuadScalar::join_radicand(const QuadScalar& o) const {
    if (radicand_ == o.radicand_) return radicand_;
    if (o.coeff_.is_zero() && (radicand_.sign() != 0 || !coeff_.is_zero())) return radicand_;
    if (coeff_.is_zero()) return o.radicand_.is_zero() ? radicand_ : o.radicand_;
    if (o.radicand_.is_zero()) return radicand_;
    throw RadicandMismatch("radicands " + radicand_.str() + " and " + o.radicand_.str() + " differ");
}

QuadScalar& QuadScalar::operator+=(const QuadScalar& o) {
    radicand_ = join_radicand(o);
    rat_ += o.rat_;
    coeff_ += o.coeff_;
    return *this;
}

QuadScalar& QuadScalar::operator-=(const QuadScalar& o) {
    radicand_ = join_radicand(o);
    rat_ -= o.rat_;
    coeff_ -= o.coeff_;
    return *this;
}

QuadScalar& QuadScalar::operator*=(const QuadScalar& o) {
    const Rational d = join_radicand(o);
    if (o.coeff_.is_zero()) {
        rat_ *= o.rat_;
        coeff_ *= o.rat_;
    } else if (coeff_.is_zero()) {
        coeff_ = rat_ * o.coeff_;
        rat_ *= o.rat_;
    } else {
        Rational a = rat_ * o.rat_ + coeff_ * o.coeff_ * d;
        coeff_ = rat_ * o.coeff_ + coeff_ * o.rat_;
        rat_ = std::move(a);
    }
    radicand_ = d;
    return *this;
}

QuadScalar& QuadScalar::operator/=(const QuadScalar& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (o.coeff_.is_zero()) {
        radicand_ = join_radicand(o);
        rat_ /= o.rat_;
        coeff_ /= o.rat_;
        return *this;
    }
    const Rational n = o.field_norm();
    *this *= o.conjugate();
    rat_ /= n;
    coeff_ /= n;
    return *this;
}

QuadScalar QuadScalar::operator-() const {
    QuadScalar r(*this);
    r.rat_ = -rat_;
    r.coeff_ = -coeff_;
    return r;
}

bool operator==(const QuadScalar& a, const QuadScalar& b) {
    a.join_radicand(b);
    return a.rat_ == b.rat_ && a.coeff_ == b.coeff_;
}

std::strong_ordering operator<=>(const QuadScalar& a, const QuadScalar& b) {
    const int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

QuadScalar quad_mul(const QuadScalar& x, const QuadScalar& y) { return x * y; }

QuadScalar inner_product(const QuadVector& u, const QuadVector& v) {
    if (u.size() != v.size())
        throw LengthMismatch("vectors of length " + std::to_string(u.size()) + " and " +
                             std::to_string(v.size()));
    QuadScalar s;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i].is_zero() || v[i].is_zero()) continue;
        s += u[i] * v[i];
    }
    return s;
}

Rational inner_product(const RationalVector& u, const RationalVector& v) {
    if (u.size() != v.size())
        throw LengthMismatch("vectors of length " + std::to_string(u.size()) + " and " +
                             std::to_string(v.size()));
    mpq_class s;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i].value() * v[i].value();
    return Rational(s);
}

Rational common_radicand(const QuadVector& entries) {
    Rational d(0);
    for (const auto& e : entries) {
        if (e.radicand().is_zero()) continue;
        if (d.is_zero()) d = e.radicand();
        else if (!(d == e.radicand()) && !e.is_rational())
            throw RadicandMismatch("radicands " + d.str() + " and " + e.radicand().str() + " differ");
    }
    return d;
}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols) {}

ExactMatrix ExactMatrix::identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = QuadScalar(1);
    return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<QuadVector>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows[0].size();
    ExactMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw LengthMismatch("ragged matrix rows");
        std::copy(rows[i].begin(), rows[i].end(), m.a_.begin() + static_cast<long>(i * c));
    }
    return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<RationalVector>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows[0].size();
    ExactMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw LengthMismatch("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = QuadScalar(rows[i][j]);
    }
    return m;
}

QuadVector ExactMatrix::row(std::size_t i) const {
    return QuadVector(a_.begin() + static_cast<long>(i * cols_),
                      a_.begin() + static_cast<long>((i + 1) * cols_));
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool ExactMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
}

bool ExactMatrix::is_rational() const {
    return std::all_of(a_.begin(), a_.end(), [](const QuadScalar& x) { return x.is_rational(); });
}

QuadVector ExactMatrix::apply(const QuadVector& v) const {
    if (v.size() != cols_) throw LengthMismatch("matrix-vector size mismatch");
    QuadVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        QuadScalar s;
        for (std::size_t j = 0; j < cols_; ++j) {
            const QuadScalar& m = (*this)(i, j);
            if (m.is_zero() || v[j].is_zero()) continue;
            s += m * v[j];
        }
        out[i] = std::move(s);
    }
    return out;
}

namespace {

// Fraction-free elimination with row pivoting. Returns the rank and leaves
// the last pivot in `last_pivot` and the row-swap parity in `swaps`.
std::size_t bareiss(std::vector<QuadScalar> a, std::size_t rows, std::size_t cols,
                    QuadScalar& last_pivot, int& swaps, bool pivoting = true,
                    std::vector<QuadScalar>* pivots = nullptr) {
    auto at = [&](std::size_t i, std::size_t j) -> QuadScalar& { return a[i * cols + j]; };
    QuadScalar prev(1);
    std::size_t r = 0;
    swaps = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        if (pivoting) {
            while (p < rows && at(p, c).is_zero()) ++p;
            if (p == rows) continue;
        } else if (at(r, c).is_zero()) {
            break;
        }
        if (p != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(at(p, j), at(r, j));
            ++swaps;
        }
        const QuadScalar piv = at(r, c);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const QuadScalar lead = at(i, c);
            for (std::size_t j = c + 1; j < cols; ++j) {
                QuadScalar v = piv * at(i, j);
                if (!lead.is_zero() && !at(r, j).is_zero()) v -= lead * at(r, j);
                v /= prev;
                at(i, j) = std::move(v);
            }
            at(i, c) = QuadScalar(0);
        }
        if (pivots) pivots->push_back(piv);
        prev = piv;
        last_pivot = piv;
        ++r;
    }
    return r;
}

}  // namespace

std::size_t ExactMatrix::rank() const {
    QuadScalar last;
    int swaps = 0;
    return bareiss(a_, rows_, cols_, last, swaps);
}

QuadScalar ExactMatrix::determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
    if (rows_ == 0) return QuadScalar(1);
    QuadScalar last;
    int swaps = 0;
    const std::size_t r = bareiss(a_, rows_, cols_, last, swaps);
    if (r < rows_) return QuadScalar(0);
    return swaps % 2 ? -last : last;
}

bool ExactMatrix::is_positive_definite() const {
    if (rows_ != cols_ || !is_symmetric()) return false;
    QuadScalar last;
    int swaps = 0;
    std::vector<QuadScalar> pivots;
    const std::size_t r = bareiss(a_, rows_, cols_, last, swaps, false, &pivots);
    if (r < rows_) return false;
    // Without pivoting the k-th Bareiss pivot is the k-th leading principal minor.
    return std::all_of(pivots.begin(), pivots.end(), [](const QuadScalar& p) { return p.sign() > 0; });
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

ExactMatrix gram_matrix(const std::vector<QuadVector>& vectors, const ExactMatrix* form) {
    const std::size_t n = vectors.size();
    std::vector<QuadVector> images;
    if (form) {
        images.reserve(n);
        for (const auto& v : vectors) images.push_back(form->apply(v));
    }
    const auto& right = form ? images : vectors;
    ExactMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            g(i, j) = inner_product(vectors[i], right[j]);
            if (j != i) g(j, i) = g(i, j);
        }
    return g;
}

}  // namespace eqlab
