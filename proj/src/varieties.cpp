#include "stabwalls/varieties.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace stabwalls {

FanoVariety FanoVariety::make(std::string name, int degree, int index) {
    FanoVariety x;
    x.name = std::move(name);
    x.degree = degree;
    x.index = index;
    x.todd1 = make_rational(index, 2);
    // td2 = (c1^2 + c2)/12 with c2 . H = 24/i
    x.todd2 = (Rational(index * index * degree) + make_rational(24, index)) / 12;
    x.todd3 = 1;
    return x;
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void parse_fail(int line, const std::string& msg) {
    throw Error(ErrorCode::Parse, "registry line " + std::to_string(line) + ": " + msg);
}

VarietyPtr finish_block(const std::string& name, const std::map<std::string, std::string>& kv, int line) {
    auto get_int = [&](const char* key) {
        auto it = kv.find(key);
        if (it == kv.end()) parse_fail(line, "block '" + name + "' lacks '" + key + "'");
        Rational q = parse_rational(it->second);
        if (q.get_den() != 1 || q <= 0 || !q.get_num().fits_sint_p())
            parse_fail(line, std::string(key) + " must be a positive integer");
        return static_cast<int>(q.get_num().get_si());
    };
    FanoVariety x = FanoVariety::make(name, get_int("degree"), get_int("index"));
    if (auto it = kv.find("todd2"); it != kv.end()) {
        x.todd2 = parse_rational(it->second);
        // td3 = c1 c2 / 24 with c2 = (12 td2 - i^2 d) L
        Rational td3 = Rational(x.index) * (12 * x.todd2 - x.index * x.index * x.degree) / 24;
        if (td3 != 1) parse_fail(line, "todd2 of '" + name + "' gives chi(O) = " + to_string(td3));
    }
    for (const auto& [k, v] : kv)
        if (k != "degree" && k != "index" && k != "todd2") parse_fail(line, "unknown key '" + k + "'");
    return std::make_shared<const FanoVariety>(std::move(x));
}

}  // namespace

VarietyRegistry VarietyRegistry::parse(const std::string& text) {
    VarietyRegistry reg;
    std::istringstream in(text);
    std::string raw, name;
    std::map<std::string, std::string> kv;
    int lineno = 0;
    auto flush = [&] {
        if (name.empty()) return;
        for (const auto& v : reg.varieties_)
            if (v->name == name) parse_fail(lineno, "duplicate variety '" + name + "'");
        reg.varieties_.push_back(finish_block(name, kv, lineno));
        kv.clear();
    };
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') parse_fail(lineno, "unterminated block header");
            flush();
            name = trim(line.substr(1, line.size() - 2));
            if (name.empty()) parse_fail(lineno, "empty variety name");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) parse_fail(lineno, "expected key = value");
        if (name.empty()) parse_fail(lineno, "key outside a [name] block");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    flush();
    return reg;
}

VarietyRegistry VarietyRegistry::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot read registry '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

const VarietyRegistry& VarietyRegistry::builtin() {
    static const VarietyRegistry reg = parse(
        "[p3]\ndegree = 1\nindex = 4\ntodd2 = 11/6\n"
        "[q3]\ndegree = 2\nindex = 3\ntodd2 = 13/6\n"
        "[v5]\ndegree = 5\nindex = 2\ntodd2 = 8/3\n"
        "[v22]\ndegree = 22\nindex = 1\ntodd2 = 23/6\n");
    return reg;
}

VarietyPtr VarietyRegistry::find(const std::string& name) const {
    for (const auto& v : varieties_)
        if (v->name == name) return v;
    throw Error(ErrorCode::UnknownVariety, "unknown variety '" + name + "'");
}

// ---------------------------------------------------------------------------

ChernCharacter::ChernCharacter(VarietyPtr variety, Rational c0, Rational c1, Rational c2, Rational c3)
    : variety_(std::move(variety)), c_{std::move(c0), std::move(c1), std::move(c2), std::move(c3)} {}

ChernCharacter ChernCharacter::zero(VarietyPtr variety) {
    return ChernCharacter(std::move(variety), 0, 0, 0, 0);
}

ChernCharacter ChernCharacter::line_bundle(VarietyPtr variety, long k) {
    Rational d(variety->degree);
    Rational kk(k);
    return ChernCharacter(std::move(variety), 1, kk, d * kk * kk / 2, d * kk * kk * kk / 6);
}

ChernCharacter ChernCharacter::from_lattice(VarietyPtr variety, const std::array<Rational, 4>& v) {
    Rational d(variety->degree);
    return ChernCharacter(std::move(variety), v[0] / d, v[1] / d, v[2], v[3]);
}

bool ChernCharacter::is_zero() const {
    return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
}

std::array<Rational, 4> ChernCharacter::lattice_vector() const {
    Rational d(degree());
    return {c_[0] * d, c_[1] * d, c_[2], c_[3]};
}

bool ChernCharacter::is_lattice_valid() const {
    auto v = lattice_vector();
    return v[0].get_den() == 1 && v[1].get_den() == 1 && Rational(2 * v[2]).get_den() == 1 &&
           Rational(6 * v[3]).get_den() == 1;
}

void require_same_variety(const ChernCharacter& a, const ChernCharacter& b) {
    if (!a.variety() || !b.variety() ||
        (a.variety() != b.variety() && a.variety()->name != b.variety()->name))
        throw Error(ErrorCode::VarietyMismatch, "characters live on different varieties");
}

ChernCharacter operator+(const ChernCharacter& a, const ChernCharacter& b) {
    require_same_variety(a, b);
    return ChernCharacter(a.variety_, a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]);
}

ChernCharacter operator-(const ChernCharacter& a, const ChernCharacter& b) {
    require_same_variety(a, b);
    return ChernCharacter(a.variety_, a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]);
}

ChernCharacter operator-(const ChernCharacter& a) {
    return ChernCharacter(a.variety_, -a[0], -a[1], -a[2], -a[3]);
}

ChernCharacter operator*(const Rational& s, const ChernCharacter& a) {
    return ChernCharacter(a.variety_, s * a[0], s * a[1], s * a[2], s * a[3]);
}

bool operator==(const ChernCharacter& a, const ChernCharacter& b) {
    if (a.variety_ && b.variety_ && a.variety_->name != b.variety_->name) return false;
    return a.c_ == b.c_;
}

std::string ChernCharacter::str() const {
    return "(" + to_string(c_[0]) + "," + to_string(c_[1]) + "," + to_string(c_[2]) + "," + to_string(c_[3]) + ")";
}

ChernCharacter ring_product(const ChernCharacter& a, const ChernCharacter& b) {
    require_same_variety(a, b);
    Rational d(a.degree());
    return ChernCharacter(a.variety(), a[0] * b[0], a[0] * b[1] + a[1] * b[0],
                          a[0] * b[2] + a[2] * b[0] + d * a[1] * b[1],
                          a[0] * b[3] + a[3] * b[0] + a[1] * b[2] + a[2] * b[1]);
}

namespace {

// e^{xH} = 1 + xH + x^2 d/2 L + x^3 d/6 P
ChernCharacter exp_h(const VarietyPtr& v, const Rational& x) {
    Rational d(v->degree);
    return ChernCharacter(v, 1, x, d * x * x / 2, d * x * x * x / 6);
}

}  // namespace

ChernCharacter twist(const ChernCharacter& ch, const Rational& beta) {
    if (beta == 0) return ch;
    return ring_product(exp_h(ch.variety(), Rational(-beta)), ch);
}

ChernCharacter tensor_line(const ChernCharacter& ch, long k) {
    if (k == 0) return ch;
    return ring_product(exp_h(ch.variety(), Rational(k)), ch);
}

ChernCharacter dual(const ChernCharacter& ch) {
    return ChernCharacter(ch.variety(), ch[0], -ch[1], ch[2], -ch[3]);
}

Rational euler_pairing(const ChernCharacter& a, const ChernCharacter& b) {
    require_same_variety(a, b);
    auto td = a.variety()->todd();
    ChernCharacter t(a.variety(), td[0], td[1], td[2], td[3]);
    return ring_product(ring_product(dual(a), b), t)[3];
}

Slope mu_slope(const ChernCharacter& ch) {
    if (ch[0] == 0) return Slope::inf();
    return Slope::of(ch[1] / ch[0]);
}

ChernCharacter spinor_character(VarietyPtr quadric) {
    if (quadric->degree != 2 || quadric->index != 3)
        throw Error(ErrorCode::UnsupportedVariety, "spinor bundle needs the quadric threefold");
    return ChernCharacter(std::move(quadric), 2, -1, 0, make_rational(1, 6));
}

ChernCharacter parse_character(VarietyPtr variety, const std::string& text) {
    std::string s = text;
    if (!s.empty() && s.front() == '(') s.erase(s.begin());
    if (!s.empty() && s.back() == ')') s.pop_back();
    std::vector<Rational> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(parse_rational(item));
    if (parts.size() != 4) throw Error(ErrorCode::Parse, "a character needs four entries: '" + text + "'");
    return ChernCharacter(std::move(variety), parts[0], parts[1], parts[2], parts[3]);
}

}  // namespace stabwalls
