#include "stabwalls/quiver.hpp"

#include <algorithm>
#include <random>
#include <thread>

namespace stabwalls {

void Quiver::validate() const {
    int n = static_cast<int>(vertices.size());
    for (const auto& [s, t] : arrows)
        if (s < 0 || s >= n || t < 0 || t >= n)
            throw Error(ErrorCode::IndexOutOfRange, "arrow endpoint outside the vertex list");
}

Quiver kronecker(int n) {
    if (n < 1) throw Error(ErrorCode::Precondition, "Kronecker quiver needs n >= 1");
    Quiver q{{"p", "q"}, {}, 0};
    for (int i = 0; i < n; ++i) q.arrows.emplace_back(0, 1);
    return q;
}

Quiver beilinson(int n) {
    if (n < 1) throw Error(ErrorCode::Precondition, "Beilinson quiver needs n >= 1");
    Quiver q{{"a", "b", "c"}, {}, static_cast<long>(n + 1) * n / 2};
    for (int i = 0; i <= n; ++i) q.arrows.emplace_back(0, 1);
    for (int i = 0; i <= n; ++i) q.arrows.emplace_back(1, 2);
    return q;
}

long moduli_dimension(const Quiver& q, const QDimension& d) {
    q.validate();
    if (d.size() != q.vertices.size()) throw Error(ErrorCode::Precondition, "dimension vector length mismatch");
    long chi = 1;
    for (const auto& [s, t] : q.arrows) chi += d[static_cast<size_t>(s)] * d[static_cast<size_t>(t)];
    for (long x : d) chi -= x * x;
    return chi;
}

std::vector<Rational> theta_from_point(const ExceptionalCollection& c, const DimensionVector& total,
                                       const StabilityPoint& p) {
    ExceptionalCollection shifted = ext_shift(c);
    BridgelandCharge zv = bridgeland_Z(ch_from_dim(total, c), p);
    if (zv.tau == 0 && zv.rho == 0)
        throw Error(ErrorCode::ZeroCentralCharge, "total class has zero central charge at " + p.str());
    std::vector<Rational> theta;
    for (const auto& o : shifted.objects) {
        BridgelandCharge ze = bridgeland_Z(o.effective(), p);
        theta.push_back(ze.tau * zv.rho - zv.tau * ze.rho);
    }
    return theta;
}

bool coprime_check(const std::vector<Rational>& theta, const QDimension& d) {
    if (theta.size() != d.size()) throw Error(ErrorCode::ThetaMismatch, "theta and dimension lengths differ");
    QDimension v(d.size(), 0);
    for (;;) {
        size_t k = 0;
        while (k < v.size() && v[k] == d[k]) v[k++] = 0;
        if (k == v.size()) return true;
        ++v[k];
        if (v == d) continue;
        Rational dot(0);
        for (size_t i = 0; i < v.size(); ++i) dot += theta[i] * v[i];
        if (dot == 0) return false;
    }
}

// ---------------------------------------------------------------------------

void KroneckerRep::validate() const {
    if (n < 1 || p_dim < 0 || q_dim < 0) throw Error(ErrorCode::Precondition, "bad Kronecker representation shape");
    if (static_cast<int>(maps.size()) != n) throw Error(ErrorCode::Precondition, "expected one matrix per arrow");
    for (const auto& m : maps) {
        if (static_cast<int>(m.size()) != q_dim) throw Error(ErrorCode::Precondition, "matrix row count != q_dim");
        for (const auto& row : m)
            if (static_cast<int>(row.size()) != p_dim) throw Error(ErrorCode::Precondition, "matrix column count != p_dim");
    }
}

namespace {

// Uniform enough and identical on every platform, unlike std distributions.
long draw(std::mt19937_64& rng, long range) {
    return static_cast<long>(rng() % static_cast<std::uint64_t>(2 * range + 1)) - range;
}

Rational rational_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw Error(ErrorCode::Parse, "matrix entries must be integers or rational strings");
}

}  // namespace

KroneckerRep KroneckerRep::random(int n, int p_dim, int q_dim, std::uint64_t seed, long range) {
    std::mt19937_64 rng(seed);
    KroneckerRep r{n, p_dim, q_dim, {}};
    for (int l = 0; l < n; ++l) {
        Matrix m(static_cast<size_t>(q_dim), std::vector<Rational>(static_cast<size_t>(p_dim)));
        for (auto& row : m)
            for (auto& x : row) x = draw(rng, range);
        r.maps.push_back(std::move(m));
    }
    return r;
}

KroneckerRep KroneckerRep::from_json(const nlohmann::json& j) {
    try {
        KroneckerRep r;
        r.n = j.at("n").get<int>();
        r.p_dim = j.at("dims").at(0).get<int>();
        r.q_dim = j.at("dims").at(1).get<int>();
        for (const auto& mj : j.at("matrices")) {
            Matrix m;
            for (const auto& rowj : mj) {
                std::vector<Rational> row;
                for (const auto& x : rowj) row.push_back(rational_from_json(x));
                m.push_back(std::move(row));
            }
            r.maps.push_back(std::move(m));
        }
        r.validate();
        return r;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::Parse, std::string("representation JSON: ") + ex.what());
    }
}

nlohmann::json KroneckerRep::to_json() const {
    nlohmann::json ms = nlohmann::json::array();
    for (const auto& m : maps) {
        nlohmann::json mj = nlohmann::json::array();
        for (const auto& row : m) {
            nlohmann::json rj = nlohmann::json::array();
            for (const auto& x : row) rj.push_back(rational_json(x));
            mj.push_back(rj);
        }
        ms.push_back(mj);
    }
    return {{"n", n}, {"dims", {p_dim, q_dim}}, {"matrices", ms}};
}

Matrix closure(const KroneckerRep& rep, const Matrix& basis_i) {
    rep.validate();
    for (const auto& v : basis_i)
        if (static_cast<int>(v.size()) != rep.p_dim) throw Error(ErrorCode::Precondition, "vector not in the source");
    if (rank(basis_i) != static_cast<int>(basis_i.size()))
        throw Error(ErrorCode::DependentVectors, "subspace basis is linearly dependent");
    Matrix images;
    for (const auto& m : rep.maps)
        for (const auto& v : basis_i) images.push_back(mat_vec(m, v));
    if (images.empty()) return {};
    return rref(images).rows;
}

bool span_contains(const Matrix& b, const Matrix& a) {
    if (a.empty()) return true;
    if (b.empty()) return rank(a) == 0;
    Matrix both = b;
    both.insert(both.end(), a.begin(), a.end());
    return rank(both) == rank(b);
}

bool is_subrepresentation(const KroneckerRep& rep, const Matrix& basis_i, const Matrix& basis_j) {
    Matrix images;
    for (const auto& m : rep.maps)
        for (const auto& v : basis_i) images.push_back(mat_vec(m, v));
    return span_contains(basis_j, images);
}

std::optional<Destabilizer> destabilizer_search(const KroneckerRep& rep, const std::vector<Rational>& theta,
                                                int budget, std::uint64_t seed, int threads) {
    rep.validate();
    if (theta.size() != 2 || theta[0] * rep.p_dim + theta[1] * rep.q_dim != 0)
        throw Error(ErrorCode::ThetaMismatch, "theta must have two entries orthogonal to the dimension vector");
    auto value = [&](const Matrix& i, const Matrix& j) -> Rational {
        return theta[0] * static_cast<long>(i.size()) + theta[1] * static_cast<long>(j.size());
    };

    // Coordinate subspaces, by size then lexicographic mask.
    const int p = rep.p_dim;
    if (p <= 20) {
        std::vector<unsigned long> masks;
        for (unsigned long m = 1; m < (1ul << p); ++m) masks.push_back(m);
        std::stable_sort(masks.begin(), masks.end(),
                         [](unsigned long a, unsigned long b) { return __builtin_popcountl(a) < __builtin_popcountl(b); });
        for (unsigned long m : masks) {
            Matrix basis;
            for (int k = 0; k < p; ++k) {
                if (!(m >> k & 1)) continue;
                std::vector<Rational> e(static_cast<size_t>(p));
                e[static_cast<size_t>(k)] = 1;
                basis.push_back(std::move(e));
            }
            Matrix j = closure(rep, basis);
            Rational v = value(basis, j);
            if (v > 0) return Destabilizer{basis, j, v, -1};
        }
    }

    // Random subspaces, drawn sequentially so the stream is fixed by the seed.
    std::mt19937_64 rng(seed);
    std::vector<Matrix> trials;
    for (int t = 0; t < budget && p > 0; ++t) {
        int dim = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(p));
        Matrix basis;
        for (int k = 0; k < dim; ++k) {
            std::vector<Rational> v(static_cast<size_t>(p));
            for (auto& x : v) x = draw(rng, 3);
            basis.push_back(std::move(v));
        }
        trials.push_back(rref(basis).rows);
    }
    std::vector<std::optional<Destabilizer>> found(trials.size());
    int n = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    n = std::max(1, std::min<int>(n, static_cast<int>(trials.size())));
    auto work = [&](int id) {
        for (size_t t = static_cast<size_t>(id); t < trials.size(); t += static_cast<size_t>(n)) {
            if (trials[t].empty()) continue;
            Matrix j = closure(rep, trials[t]);
            Rational v = value(trials[t], j);
            if (v > 0) found[t] = Destabilizer{trials[t], j, v, static_cast<long>(t)};
        }
    };
    std::vector<std::thread> pool;
    for (int id = 1; id < n; ++id) pool.emplace_back(work, id);
    work(0);
    for (auto& th : pool) th.join();
    for (auto& f : found)
        if (f) return f;
    return std::nullopt;
}

}  // namespace stabwalls
