#include "stabwalls/exceptional.hpp"

#include "stabwalls/linalg.hpp"
#include "stabwalls/stability.hpp"

#include <sstream>

namespace stabwalls {

std::string_view provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Canonical: return "canonical";
        case Provenance::Mutated: return "mutated";
        case Provenance::User: return "user";
    }
    return "?";
}

std::string DimensionVector::str() const {
    return "[" + std::to_string(a[0]) + "," + std::to_string(a[1]) + "," + std::to_string(a[2]) + "," +
           std::to_string(a[3]) + "]";
}

DimensionVector DimensionVector::parse(const std::string& text) {
    std::string s = text;
    if (!s.empty() && s.front() == '[') s.erase(s.begin());
    if (!s.empty() && s.back() == ']') s.pop_back();
    std::stringstream ss(s);
    std::string item;
    DimensionVector d;
    size_t n = 0;
    while (std::getline(ss, item, ',')) {
        if (n == 4) throw Error(ErrorCode::Parse, "dimension vector needs four entries: '" + text + "'");
        Rational q = parse_rational(item);
        if (q.get_den() != 1 || !q.get_num().fits_slong_p())
            throw Error(ErrorCode::NonIntegral, "dimension vector entry '" + item + "'");
        if (q < 0) throw Error(ErrorCode::NegativeEntries, "dimension vector entry '" + item + "'");
        d.a[n++] = q.get_num().get_si();
    }
    if (n != 4) throw Error(ErrorCode::Parse, "dimension vector needs four entries: '" + text + "'");
    return d;
}

namespace {

bool is_p3(const FanoVariety& v) { return v.degree == 1 && v.index == 4; }
bool is_q3(const FanoVariety& v) { return v.degree == 2 && v.index == 3; }

std::string line_name(long k) {
    if (k == 0) return "O";
    return "O(" + std::to_string(k) + ")";
}

void check_index(const ExceptionalCollection& c, int i) {
    if (i < 0 || i + 1 >= static_cast<int>(c.size()))
        throw Error(ErrorCode::IndexOutOfRange, "mutation index " + std::to_string(i) + " out of range");
    if (c.provenance == Provenance::User)
        throw Error(ErrorCode::Precondition, "mutations need a canonical or mutated collection");
}

void append_word(ExceptionalCollection& c, char kind, int i) {
    if (!c.word.empty()) c.word += ",";
    c.word += kind;
    c.word += std::to_string(i);
}

}  // namespace

ExceptionalCollection canonical_collection(const VarietyPtr& variety) {
    ExceptionalCollection c;
    c.variety = variety;
    c.provenance = Provenance::Canonical;
    if (is_p3(*variety)) {
        for (long k = -2; k <= 1; ++k) c.objects.push_back({ChernCharacter::line_bundle(variety, k), 0, line_name(k)});
    } else if (is_q3(*variety)) {
        // S* = S(1), so S*(-2) = S(-1)
        c.objects.push_back({tensor_line(spinor_character(variety), -1), 0, "S*(-2)"});
        for (long k = -1; k <= 1; ++k) c.objects.push_back({ChernCharacter::line_bundle(variety, k), 0, line_name(k)});
    } else {
        throw Error(ErrorCode::UnsupportedVariety, "no exceptional collection shipped for '" + variety->name + "'");
    }
    return c;
}

ExceptionalCollection ext_shift(ExceptionalCollection c) {
    if (c.size() != 4) throw Error(ErrorCode::UnsupportedShape, "ext_shift needs four objects");
    for (size_t i = 0; i < 4; ++i) c.objects[i].shift = static_cast<int>(3 - i);
    return c;
}

ExceptionalCollection left_mutation(const ExceptionalCollection& c, int i) {
    check_index(c, i);
    ExceptionalCollection out = c;
    const auto& a = c.objects[static_cast<size_t>(i)];
    const auto& b = c.objects[static_cast<size_t>(i + 1)];
    Rational chi = euler_pairing(a.ch, b.ch);
    out.objects[static_cast<size_t>(i)] = {chi * a.ch - b.ch, a.shift, "L(" + a.name + "," + b.name + ")"};
    out.objects[static_cast<size_t>(i + 1)] = {a.ch, b.shift, a.name};
    out.provenance = Provenance::Mutated;
    append_word(out, 'L', i);
    return out;
}

ExceptionalCollection right_mutation(const ExceptionalCollection& c, int i) {
    check_index(c, i);
    ExceptionalCollection out = c;
    const auto& a = c.objects[static_cast<size_t>(i)];
    const auto& b = c.objects[static_cast<size_t>(i + 1)];
    Rational chi = euler_pairing(a.ch, b.ch);
    out.objects[static_cast<size_t>(i)] = {b.ch, a.shift, b.name};
    out.objects[static_cast<size_t>(i + 1)] = {chi * b.ch - a.ch, b.shift, "R(" + a.name + "," + b.name + ")"};
    out.provenance = Provenance::Mutated;
    append_word(out, 'R', i);
    return out;
}

std::vector<Mutation> parse_word(const std::string& word) {
    std::vector<Mutation> out;
    std::stringstream ss(word);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto first = item.find_first_not_of(" \t");
        item = first == std::string::npos ? "" : item.substr(first, item.find_last_not_of(" \t") - first + 1);
        if (item.empty()) throw Error(ErrorCode::Parse, "empty mutation in word '" + word + "'");
        if (item.size() != 2 || (item[0] != 'L' && item[0] != 'R') || item[1] < '0' || item[1] > '2')
            throw Error(ErrorCode::Parse, "bad mutation '" + item + "', expected L0..L2 or R0..R2");
        out.push_back({item[0], item[1] - '0'});
    }
    return out;
}

ExceptionalCollection apply_word(ExceptionalCollection c, const std::vector<Mutation>& word) {
    for (const auto& m : word) c = m.kind == 'L' ? left_mutation(c, m.index) : right_mutation(c, m.index);
    return c;
}

std::vector<std::string> mu_order_warnings(const ExceptionalCollection& c) {
    std::vector<std::string> out;
    for (size_t i = 0; i + 1 < c.size(); ++i) {
        Slope a = mu_slope(c[i].ch), b = mu_slope(c[i + 1].ch);
        if (!(a < b))
            out.push_back("mu(E" + std::to_string(i) + ") = " + a.str() + " is not below mu(E" + std::to_string(i + 1) +
                          ") = " + b.str());
    }
    return out;
}

std::vector<std::vector<Rational>> gram_matrix(const ExceptionalCollection& c) {
    std::vector<std::vector<Rational>> g(c.size(), std::vector<Rational>(c.size()));
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < c.size(); ++j) g[i][j] = euler_pairing(c[i].ch, c[j].ch);
    return g;
}

Rational lattice_determinant(const ExceptionalCollection& c) {
    Matrix m;
    for (const auto& o : c.objects) {
        auto v = o.ch.lattice_vector();
        m.emplace_back(v.begin(), v.end());
    }
    return determinant(m);
}

DimensionVector dimension_vector(const ChernCharacter& ch, const ExceptionalCollection& c) {
    if (c.size() != 4) throw Error(ErrorCode::UnsupportedShape, "dimension vectors need four objects");
    Matrix m(4, std::vector<Rational>(4));
    for (size_t i = 0; i < 4; ++i) {
        require_same_variety(ch, c[i].ch);
        Rational sign = (3 - i) % 2 == 0 ? 1 : -1;
        for (int r = 0; r < 4; ++r) m[static_cast<size_t>(r)][i] = sign * c[i].ch[r];
    }
    auto x = solve(m, {ch[0], ch[1], ch[2], ch[3]});
    DimensionVector d;
    for (size_t i = 0; i < 4; ++i) {
        if (x[i].get_den() != 1 || !x[i].get_num().fits_slong_p())
            throw Error(ErrorCode::NonIntegral, "character " + ch.str() + " has non-integral coordinate " + to_string(x[i]));
        if (x[i] < 0)
            throw Error(ErrorCode::NegativeEntries, "character " + ch.str() + " has negative coordinate " + to_string(x[i]));
        d.a[i] = x[i].get_num().get_si();
    }
    return d;
}

ChernCharacter ch_from_dim(const DimensionVector& dim, const ExceptionalCollection& c) {
    if (c.size() != 4) throw Error(ErrorCode::UnsupportedShape, "dimension vectors need four objects");
    ChernCharacter acc = ChernCharacter::zero(c.variety);
    for (size_t i = 0; i < 4; ++i) {
        long sign = (3 - i) % 2 == 0 ? 1 : -1;
        acc = acc + Rational(sign * dim[i]) * c[i].ch;
    }
    return acc;
}

nlohmann::json to_json(const ExceptionalCollection& c) {
    nlohmann::json objs = nlohmann::json::array();
    for (const auto& o : c.objects) {
        nlohmann::json v = nlohmann::json::array(), ch = nlohmann::json::array();
        for (const auto& x : o.ch.lattice_vector()) v.push_back(rational_json(x));
        for (const auto& x : o.ch.coords()) ch.push_back(rational_json(x));
        objs.push_back({{"name", o.name}, {"v", v}, {"ch", ch}, {"shift", o.shift}, {"mu", mu_slope(o.ch).str()}});
    }
    return {{"variety", c.variety->name},
            {"provenance", provenance_name(c.provenance)},
            {"word", c.word},
            {"objects", objs},
            {"warnings", mu_order_warnings(c)}};
}

}  // namespace stabwalls
