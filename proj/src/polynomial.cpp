#include "stabwalls/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace stabwalls {

// ---------------------------------------------------------------------------
// UniPoly

UniPoly::UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const Rational& c) { return UniPoly({c}); }

UniPoly UniPoly::x() { return UniPoly({Rational(0), Rational(1)}); }

void UniPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UniPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Rational(0);
    return coeffs_[static_cast<size_t>(i)];
}

Rational UniPoly::leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

Rational UniPoly::operator()(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double UniPoly::eval_double(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
}

UniPoly UniPoly::derivative() const {
    std::vector<Rational> d;
    for (size_t i = 1; i < coeffs_.size(); ++i) d.emplace_back(coeffs_[i] * static_cast<long>(i));
    return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    Rational lc = leading();
    std::vector<Rational> c;
    for (const auto& a : coeffs_) c.emplace_back(a / lc);
    return UniPoly(std::move(c));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return UniPoly(std::move(c));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
        for (size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UniPoly(std::move(c));
}

UniPoly operator*(const Rational& s, const UniPoly& a) {
    std::vector<Rational> c;
    for (const auto& x : a.coeffs_) c.emplace_back(s * x);
    return UniPoly(std::move(c));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw Error(ErrorCode::Precondition, "polynomial division by zero");
    std::vector<Rational> rem = a.coeffs_;
    int db = b.degree();
    std::vector<Rational> quot(static_cast<size_t>(std::max(0, a.degree() - db + 1)));
    const Rational& lb = b.coeffs_.back();
    for (int k = a.degree() - db; k >= 0; --k) {
        Rational q = rem[static_cast<size_t>(k + db)] / lb;
        quot[static_cast<size_t>(k)] = q;
        if (q == 0) continue;
        for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(k + j)] -= q * b.coeffs_[static_cast<size_t>(j)];
    }
    return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly UniPoly::gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly r = divmod(x, y).second;
        x = std::move(y);
        y = r.monic();
    }
    return x.monic();
}

namespace {

int sign_at(const UniPoly& p, const Rational& x) { return sgn(p(x)); }

std::vector<UniPoly> sturm_chain(const UniPoly& p) {
    std::vector<UniPoly> chain{p, p.derivative()};
    while (!chain.back().is_zero()) {
        UniPoly r = UniPoly::divmod(chain[chain.size() - 2], chain.back()).second;
        if (r.is_zero()) break;
        chain.push_back(Rational(-1) * r);
    }
    return chain;
}

int sign_variations(const std::vector<UniPoly>& chain, const Rational& x) {
    int count = 0, last = 0;
    for (const auto& q : chain) {
        int s = sign_at(q, x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

// Roots in (lo, hi] for a square-free p.
int roots_in(const std::vector<UniPoly>& chain, const Rational& lo, const Rational& hi) {
    return sign_variations(chain, lo) - sign_variations(chain, hi);
}

UniPoly square_free(const UniPoly& p) {
    UniPoly g = UniPoly::gcd(p, p.derivative());
    if (g.degree() <= 0) return p.monic();
    return UniPoly::divmod(p, g).first.monic();
}

}  // namespace

std::vector<std::pair<Rational, Rational>> isolate_real_roots(const UniPoly& p) {
    if (p.is_zero()) throw Error(ErrorCode::IdenticallyZero, "root isolation of the zero polynomial");
    std::vector<std::pair<Rational, Rational>> out;
    if (p.degree() == 0) return out;
    UniPoly q = square_free(p);
    auto chain = sturm_chain(q);

    // Cauchy bound.
    Rational bound(0);
    for (int i = 0; i < q.degree(); ++i) bound = std::max(bound, Rational(abs(q.coeff(i))));
    bound += 1;

    std::vector<std::pair<Rational, Rational>> stack{{Rational(-bound), bound}};
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        int n = roots_in(chain, lo, hi);
        if (n == 0) continue;
        if (n == 1) {
            out.emplace_back(lo, hi);
            continue;
        }
        Rational mid = (lo + hi) / 2;
        stack.emplace_back(lo, mid);
        stack.emplace_back(mid, hi);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::vector<Rational> rational_roots(const UniPoly& p) {
    if (p.is_zero()) throw Error(ErrorCode::IdenticallyZero, "rational roots of the zero polynomial");
    std::vector<Rational> roots;
    if (p.degree() == 0) return roots;
    UniPoly q = square_free(p);

    // A rational root a/b in lowest terms has b | leading coefficient of the
    // primitive integer form, so distinct candidates are >= 1/lc^2 apart.
    Integer den_lcm(1);
    for (const auto& c : q.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    Integer lc = abs(Integer(q.leading() * den_lcm));
    Rational min_width(1, lc * lc * 2);
    min_width.canonicalize();

    auto chain = sturm_chain(q);
    for (auto [lo, hi] : isolate_real_roots(q)) {
        if (q(hi) == 0) {
            roots.push_back(hi);
            continue;
        }
        for (;;) {
            Rational cand = simplest_between(lo, hi);
            if (cand > lo && q(cand) == 0) {
                roots.push_back(cand);
                break;
            }
            if (hi - lo < min_width) break;
            Rational mid = (lo + hi) / 2;
            if (q(mid) == 0) {
                roots.push_back(mid);
                break;
            }
            if (roots_in(chain, lo, mid) == 1)
                hi = mid;
            else
                lo = mid;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// ---------------------------------------------------------------------------
// BiPoly

BiPoly BiPoly::constant(const Rational& c) { return monomial(0, 0, c); }
BiPoly BiPoly::beta() { return monomial(1, 0, Rational(1)); }
BiPoly BiPoly::t() { return monomial(0, 1, Rational(1)); }

BiPoly BiPoly::monomial(int deg_beta, int deg_t, const Rational& c) {
    BiPoly p;
    p.add_term({deg_beta, deg_t}, c);
    return p;
}

void BiPoly::add_term(const Key& k, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational BiPoly::coeff(int deg_beta, int deg_t) const {
    auto it = terms_.find({deg_beta, deg_t});
    return it == terms_.end() ? Rational(0) : it->second;
}

int BiPoly::degree_beta() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.first);
    return d;
}

int BiPoly::degree_t() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.second);
    return d;
}

int BiPoly::min_degree_beta() const {
    if (terms_.empty()) return -1;
    int d = terms_.begin()->first.first;
    for (const auto& [k, c] : terms_) d = std::min(d, k.first);
    return d;
}

Rational BiPoly::operator()(const Rational& beta, const Rational& t) const {
    Rational acc(0);
    for (const auto& [k, c] : terms_) {
        Rational m = c;
        for (int i = 0; i < k.first; ++i) m *= beta;
        for (int i = 0; i < k.second; ++i) m *= t;
        acc += m;
    }
    return acc;
}

double BiPoly::eval_double(double beta, double t) const {
    double acc = 0.0;
    for (const auto& [k, c] : terms_) acc += c.get_d() * std::pow(beta, k.first) * std::pow(t, k.second);
    return acc;
}

UniPoly BiPoly::t_coefficient(int k) const {
    std::vector<Rational> c(static_cast<size_t>(std::max(0, degree_beta() + 1)));
    for (const auto& [key, v] : terms_)
        if (key.second == k) c[static_cast<size_t>(key.first)] += v;
    return UniPoly(std::move(c));
}

UniPoly BiPoly::at_beta(const Rational& beta) const {
    std::vector<Rational> c(static_cast<size_t>(std::max(0, degree_t() + 1)));
    for (const auto& [key, v] : terms_) {
        Rational m = v;
        for (int i = 0; i < key.first; ++i) m *= beta;
        c[static_cast<size_t>(key.second)] += m;
    }
    return UniPoly(std::move(c));
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    BiPoly r = a;
    for (const auto& [k, c] : b.terms_) r.add_term(k, c);
    return r;
}

BiPoly operator-(const BiPoly& a) {
    BiPoly r;
    for (const auto& [k, c] : a.terms_) r.add_term(k, Rational(-c));
    return r;
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) r.add_term({ka.first + kb.first, ka.second + kb.second}, ca * cb);
    return r;
}

BiPoly operator*(const Rational& s, const BiPoly& a) {
    BiPoly r;
    for (const auto& [k, c] : a.terms_) r.add_term(k, s * c);
    return r;
}

std::optional<Rational> BiPoly::ratio(const BiPoly& a, const BiPoly& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.terms_.size() != b.terms_.size()) return std::nullopt;
    const auto& [k0, c0] = *b.terms_.begin();
    Rational r = a.coeff(k0.first, k0.second) / c0;
    if (a == r * b) return r;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Resultant

namespace {

UniPoly determinant(std::vector<std::vector<UniPoly>> m) {
    size_t n = m.size();
    if (n == 0) return UniPoly::constant(Rational(1));
    if (n == 1) return m[0][0];
    UniPoly acc;
    for (size_t row = 0; row < n; ++row) {
        if (m[row][0].is_zero()) continue;
        std::vector<std::vector<UniPoly>> minor;
        for (size_t r = 0; r < n; ++r) {
            if (r == row) continue;
            minor.emplace_back(m[r].begin() + 1, m[r].end());
        }
        UniPoly term = m[row][0] * determinant(std::move(minor));
        acc = (row % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

}  // namespace

UniPoly resultant_t(const BiPoly& f, const BiPoly& g) {
    int m = std::max(0, f.degree_t());
    int n = std::max(0, g.degree_t());
    size_t size = static_cast<size_t>(m + n);
    std::vector<std::vector<UniPoly>> sylvester(size, std::vector<UniPoly>(size));
    // Rows: n shifted copies of f's coefficients, then m copies of g's (highest power first).
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) sylvester[static_cast<size_t>(r)][static_cast<size_t>(r + j)] = f.t_coefficient(m - j);
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j)
            sylvester[static_cast<size_t>(n + r)][static_cast<size_t>(r + j)] = g.t_coefficient(n - j);
    return determinant(std::move(sylvester));
}

}  // namespace stabwalls
