#pragma once

// Picard-rank-one Fano threefolds and Chern characters in Q[1,H,L,P],
// with H^2 = d L and H L = P.

#include "stabwalls/rational.hpp"

#include <array>
#include <compare>
#include <memory>
#include <string>
#include <vector>

namespace stabwalls {

struct FanoVariety {
    std::string name;
    int degree = 1;  // d = H^3
    int index = 1;   // c1(X) = index * H
    Rational todd1, todd2, todd3;

    /// Coefficients of td(X) on (1, H, L, P).
    std::array<Rational, 4> todd() const { return {Rational(1), todd1, todd2, todd3}; }

    /// Builds an entry with todd1 = i/2 and todd2 from c1 c2 = 24.
    static FanoVariety make(std::string name, int degree, int index);
};

using VarietyPtr = std::shared_ptr<const FanoVariety>;

class VarietyRegistry {
public:
    /// P^3, the quadric Q_3, V_5 and V_22.
    static const VarietyRegistry& builtin();
    /// Key/value blocks; see docs/formats.md.
    static VarietyRegistry parse(const std::string& text);
    static VarietyRegistry load(const std::string& path);

    VarietyPtr find(const std::string& name) const;  // throws UnknownVariety
    const std::vector<VarietyPtr>& all() const { return varieties_; }

private:
    std::vector<VarietyPtr> varieties_;
};

/// Value or +infinity.
struct Slope {
    bool infinite = false;
    Rational value;

    static Slope inf() { return {true, Rational(0)}; }
    static Slope of(const Rational& q) { return {false, q}; }

    friend bool operator==(const Slope& a, const Slope& b) {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
    friend std::strong_ordering operator<=>(const Slope& a, const Slope& b) {
        if (a.infinite || b.infinite) return a.infinite <=> b.infinite;
        int c = cmp(a.value, b.value);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    bool greater_than(const Rational& q) const { return infinite || value > q; }
    std::string str() const { return infinite ? "inf" : to_string(value); }
};

class ChernCharacter {
public:
    ChernCharacter() = default;
    ChernCharacter(VarietyPtr variety, Rational c0, Rational c1, Rational c2, Rational c3);
    static ChernCharacter zero(VarietyPtr variety);
    /// ch(O(k)) = e^{kH}.
    static ChernCharacter line_bundle(VarietyPtr variety, long k);
    /// Built from the lattice vector (c0 d, c1 d, c2, c3).
    static ChernCharacter from_lattice(VarietyPtr variety, const std::array<Rational, 4>& v);

    const Rational& operator[](int i) const { return c_[static_cast<size_t>(i)]; }
    const std::array<Rational, 4>& coords() const { return c_; }
    const VarietyPtr& variety() const { return variety_; }
    int degree() const { return variety_->degree; }
    bool is_zero() const;

    std::array<Rational, 4> lattice_vector() const;
    /// Integer rank and degree, 2 c2 and 6 c3 integral.
    bool is_lattice_valid() const;

    friend ChernCharacter operator+(const ChernCharacter& a, const ChernCharacter& b);
    friend ChernCharacter operator-(const ChernCharacter& a, const ChernCharacter& b);
    friend ChernCharacter operator-(const ChernCharacter& a);
    friend ChernCharacter operator*(const Rational& s, const ChernCharacter& a);
    friend bool operator==(const ChernCharacter& a, const ChernCharacter& b);

    std::string str() const;  // "(c0,c1,c2,c3)"

private:
    VarietyPtr variety_;
    std::array<Rational, 4> c_{};
};

/// Product in the Chow ring of the shared variety.
ChernCharacter ring_product(const ChernCharacter& a, const ChernCharacter& b);

/// e^{-beta H} ch.
ChernCharacter twist(const ChernCharacter& ch, const Rational& beta);
/// ch e^{kH}.
ChernCharacter tensor_line(const ChernCharacter& ch, long k);
ChernCharacter dual(const ChernCharacter& ch);
/// chi(A, B) by Riemann-Roch.
Rational euler_pairing(const ChernCharacter& a, const ChernCharacter& b);
Slope mu_slope(const ChernCharacter& ch);

/// ch(S) on the quadric: rank 2, c1 = -H, c2 = L, c3 = 0.
ChernCharacter spinor_character(VarietyPtr quadric);

void require_same_variety(const ChernCharacter& a, const ChernCharacter& b);
/// "(a,b,c,d)" or "a,b,c,d", rationals in p/q or decimal form.
ChernCharacter parse_character(VarietyPtr variety, const std::string& text);

}  // namespace stabwalls
