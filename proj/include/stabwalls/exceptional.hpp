#pragma once

// Exceptional collections at the level of Chern characters.

#include "stabwalls/varieties.hpp"

#include <json.hpp>

#include <array>
#include <string>
#include <vector>

namespace stabwalls {

struct ExceptionalObject {
    ChernCharacter ch;  // unshifted sheaf character
    int shift = 0;
    std::string name;

    /// (-1)^shift ch
    ChernCharacter effective() const { return shift % 2 == 0 ? ch : -ch; }
};

enum class Provenance { Canonical, Mutated, User };
std::string_view provenance_name(Provenance p);

struct ExceptionalCollection {
    VarietyPtr variety;
    std::vector<ExceptionalObject> objects;
    Provenance provenance = Provenance::User;
    std::string word;  // mutations applied so far, e.g. "L2,R0"

    size_t size() const { return objects.size(); }
    const ExceptionalObject& operator[](size_t i) const { return objects[i]; }
};

struct DimensionVector {
    std::array<long, 4> a{};

    long& operator[](size_t i) { return a[i]; }
    long operator[](size_t i) const { return a[i]; }
    bool is_zero() const { return a == std::array<long, 4>{}; }
    friend bool operator==(const DimensionVector&, const DimensionVector&) = default;
    friend auto operator<=>(const DimensionVector&, const DimensionVector&) = default;
    std::string str() const;  // "[a0,a1,a2,a3]"
    static DimensionVector parse(const std::string& text);
};

/// O(-2), O(-1), O, O(1) on P^3; S*(-2), O(-1), O, O(1) on Q_3. Unshifted.
ExceptionalCollection canonical_collection(const VarietyPtr& variety);

/// Shifts (3,2,1,0).
ExceptionalCollection ext_shift(ExceptionalCollection c);

ExceptionalCollection left_mutation(const ExceptionalCollection& c, int i);
ExceptionalCollection right_mutation(const ExceptionalCollection& c, int i);

struct Mutation {
    char kind;  // 'L' or 'R'
    int index;
};
std::vector<Mutation> parse_word(const std::string& word);
ExceptionalCollection apply_word(ExceptionalCollection c, const std::vector<Mutation>& word);

/// Messages for each i with mu(E_i) >= mu(E_{i+1}).
std::vector<std::string> mu_order_warnings(const ExceptionalCollection& c);

/// chi(E_i, E_j) on the unshifted characters.
std::vector<std::vector<Rational>> gram_matrix(const ExceptionalCollection& c);

/// Determinant of the 4x4 matrix of lattice vectors.
Rational lattice_determinant(const ExceptionalCollection& c);

/// Solves ch = sum (-1)^{3-i} a_i ch(E_i).
DimensionVector dimension_vector(const ChernCharacter& ch, const ExceptionalCollection& c);
ChernCharacter ch_from_dim(const DimensionVector& dim, const ExceptionalCollection& c);

nlohmann::json to_json(const ExceptionalCollection& c);

}  // namespace stabwalls
