#include "harness.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <set>
#include <sstream>

#include "reltrace/edge_path.hpp"

#ifndef RELTRACE_FIXTURE_DIR
#error "RELTRACE_FIXTURE_DIR must point at the fixture directory"
#endif

namespace reltrace::testing {

namespace {

using SimplexSet = std::set<Simplex>;

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Simplex normalized(std::vector<std::size_t> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

void add_with_faces(SimplexSet& out, const Simplex& s) {
    if (s.empty() || !out.insert(s).second) return;
    if (s.size() == 1) return;
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
        Simplex face;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (i != drop) face.push_back(s[i]);
        add_with_faces(out, face);
    }
}

Simplex random_subset(std::mt19937_64& rng, std::size_t n, std::size_t size) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(size);
    return normalized(all);
}

// Multiplicative closure of {a, -1} in the units mod n.
std::vector<std::size_t> unit_subgroup(std::size_t a, std::size_t n) {
    std::set<std::size_t> group{1};
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::size_t u : std::vector<std::size_t>(group.begin(), group.end()))
            for (std::size_t g : {a % n, n - 1})
                if (group.insert(u * g % n).second) grew = true;
    }
    return {group.begin(), group.end()};
}

Simplex affine_image(const Simplex& s, std::size_t u, std::size_t t, std::size_t n) {
    Simplex out;
    for (std::size_t x : s) out.push_back((u * x + t) % n);
    return normalized(out);
}

SimplexSet symmetric_complex(std::mt19937_64& rng, std::size_t n, const std::vector<std::size_t>& units) {
    std::vector<Simplex> seeds{{0, 1}};
    const std::size_t extra = pick(rng, 1, 3);
    for (std::size_t i = 0; i < extra; ++i) seeds.push_back(random_subset(rng, n, pick(rng, 2, 3)));
    SimplexSet out;
    for (const auto& seed : seeds)
        for (std::size_t u : units)
            for (std::size_t t = 0; t < n; ++t) add_with_faces(out, affine_image(seed, u, t, n));
    return out;
}

Simplex random_simplex(std::mt19937_64& rng, const SimplexSet& complex) {
    auto it = complex.begin();
    std::advance(it, pick(rng, 0, complex.size() - 1));
    return *it;
}

std::vector<std::vector<std::size_t>> as_lists(const SimplexSet& s) { return {s.begin(), s.end()}; }

std::vector<std::string> numbered_names(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
    return names;
}

std::size_t component_index(const std::string& label) { return std::stoul(label.substr(1)); }

bool same_tree(const Frame& x, const Frame& y) { return x.root == y.root && x.parent == y.parent; }

}  // namespace

std::uint64_t test_seed() {
    if (const char* env = std::getenv("RELTRACE_SEED"); env && *env) return std::stoull(env);
    return 20240601;
}

std::string fixture_path(const std::string& name) { return std::string(RELTRACE_FIXTURE_DIR) + "/" + name; }

std::vector<std::string> fixture_files() {
    std::vector<std::string> out;
    for (const auto& entry : std::filesystem::directory_iterator(RELTRACE_FIXTURE_DIR))
        if (entry.path().extension() == ".json") out.push_back(entry.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, Int bound) {
    std::uniform_int_distribution<Int> entry(-bound, bound);
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry(rng);
    return m;
}

BigInt exact_determinant(const IntMatrix& input) {
    const std::size_t n = input.rows();
    std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = input(i, j);
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return n == 0 ? BigInt(1) : sign * m[n - 1][n - 1];
}

bool exact_factorization(const IntMatrix& U, const IntMatrix& M, const IntMatrix& V, const IntMatrix& D) {
    auto product = [](const std::vector<std::vector<BigInt>>& a, const IntMatrix& b) {
        std::vector<std::vector<BigInt>> c(a.size(), std::vector<BigInt>(b.cols()));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t j = 0; j < b.cols(); ++j) c[i][j] += a[i][k] * b(k, j);
        return c;
    };
    std::vector<std::vector<BigInt>> u(U.rows(), std::vector<BigInt>(U.cols()));
    for (std::size_t i = 0; i < U.rows(); ++i)
        for (std::size_t j = 0; j < U.cols(); ++j) u[i][j] = U(i, j);
    const auto result = product(product(u, M), V);
    if (result.size() != D.rows()) return false;
    for (std::size_t i = 0; i < D.rows(); ++i)
        for (std::size_t j = 0; j < D.cols(); ++j)
            if (result[i][j] != D(i, j)) return false;
    return true;
}

RandomInstance random_instance(std::mt19937_64& rng, std::size_t index) {
    RandomInstance r;
    const std::size_t n = pick(rng, 4, 8);
    std::ostringstream desc;
    SimplexSet B, A;
    if (index % 3 != 2) {
        r.kind = "affine";
        std::vector<std::size_t> units;
        for (std::size_t u = 1; u < n; ++u)
            if (std::gcd(u, n) == 1) units.push_back(u);
        const std::size_t a = units[pick(rng, 0, units.size() - 1)];
        const std::size_t k = pick(rng, 0, n - 1);
        B = symmetric_complex(rng, n, unit_subgroup(a, n));
        for (std::size_t v = 0; v < n; ++v) r.map.image.push_back((a * v + k) % n);
        const std::size_t orbits = pick(rng, 0, 2);
        for (std::size_t i = 0; i < orbits; ++i) {
            Simplex s = random_simplex(rng, B);
            for (std::size_t step = 0; step < 2 * n; ++step) {
                add_with_faces(A, s);
                s = affine_image(s, a, k, n);
            }
        }
        desc << "affine n=" << n << " f(x)=" << a << "x+" << k;
    } else {
        r.kind = "collapse";
        B = symmetric_complex(rng, n, {1});
        const Simplex sigma = random_simplex(rng, B);
        for (std::size_t v = 0; v < n; ++v) r.map.image.push_back(sigma[pick(rng, 0, sigma.size() - 1)]);
        if (pick(rng, 0, 2) > 0) {
            add_with_faces(A, sigma);
            if (pick(rng, 0, 1)) add_with_faces(A, random_simplex(rng, B));
        }
        desc << "collapse n=" << n << " onto " << sigma.size() - 1 << "-simplex";
    }
    desc << " |B|=" << B.size() << " |A|=" << A.size();
    r.description = desc.str();
    r.pair = SimplicialPair(numbered_names(n), as_lists(B), as_lists(A));
    return r;
}

std::vector<std::size_t> reversed_priority(std::size_t num_vertices) {
    std::vector<std::size_t> rank(num_vertices);
    for (std::size_t v = 0; v < num_vertices; ++v) rank[v] = num_vertices - 1 - v;
    return rank;
}

TreeComparison compare_trees(const SimplicialPair& pair, const VertexSelfMap& f, const std::vector<std::size_t>& first,
                             const std::vector<std::size_t>& second) {
    TreeComparison out;
    const RelativeTrace t1 = relative_reidemeister(build_simplicial_model(pair, f, {first, 0}));
    const RelativeTrace t2 = relative_reidemeister(build_simplicial_model(pair, f, {second, 0}));
    const ComponentData comps = components(pair);
    if (t1.A.size() != t2.A.size() || t1.B.size() != t2.B.size()) {
        out.detail = "different component sets";
        return out;
    }

    std::ostringstream detail;
    bool identical = true;
    auto check = [&](const std::vector<PartTrace>& p1, const std::vector<PartTrace>& p2, bool a_only,
                     const char* what) {
        for (std::size_t p = 0; p < p1.size(); ++p) {
            const std::size_t c = component_index(p1[p].label);
            const auto& vs = a_only ? comps.a_components.at(c) : comps.b_components.at(c);
            const Frame f1 = make_frame(pair, vs, a_only, first);
            const Frame f2 = make_frame(pair, vs, a_only, second);
            if (!same_tree(f1, f2)) out.distinct_trees = true;
            const ClassMap carry = transport_classes(f2, f1, p2[p].classes, p1[p].classes, f);
            const TraceVector moved = push_forward(p2[p].trace, carry);
            if (!(moved == p1[p].trace)) {
                identical = false;
                detail << what << " " << p1[p].label << ": " << format(*p1[p].classes, p1[p].trace) << " vs "
                       << format(*p1[p].classes, moved) << "; ";
            }
        }
    };
    check(t1.A, t2.A, true, "A");
    check(t1.B, t2.B, false, "B");
    check(t1.absolute, t2.absolute, false, "absolute");
    out.identical = identical;
    out.detail = detail.str();
    return out;
}

Int brute_force_class_count(const IntMatrix& phi, Int m) {
    const std::size_t n = phi.rows();
    Int total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= m;
    std::set<std::vector<Int>> image;
    std::vector<Int> h(n, 0);
    for (Int code = 0; code < total; ++code) {
        Int c = code;
        for (std::size_t i = 0; i < n; ++i) {
            h[i] = c % m;
            c /= m;
        }
        std::vector<Int> v(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            Int s = h[i];
            for (std::size_t j = 0; j < n; ++j) s -= phi(i, j) * h[j];
            v[i] = ((s % m) + m) % m;
        }
        image.insert(v);
    }
    return total / static_cast<Int>(image.size());
}

Presentation torsion_presentation(std::size_t n, Int m) {
    Presentation p;
    for (std::size_t i = 0; i < n; ++i) {
        p.generators.push_back("x" + std::to_string(i));
        p.relators.push_back(Word::generator(i, m));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            p.relators.push_back(Word({{i, 1}, {j, 1}, {i, -1}, {j, -1}}));
    return p;
}

}  // namespace reltrace::testing
