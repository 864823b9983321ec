#pragma once

#include "ops/coverage.hpp"
#include "ops/rng.hpp"
#include "ops/set_function.hpp"
#include "ops/zeta.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ops {

// ---------------------------------------------------------------------------
// Good/bad weight pair: two symmetric set weightings that agree on all sizes
// up to ell but separate at the target size k.
// ---------------------------------------------------------------------------

namespace detail {

// Exact determinant via Gaussian elimination; matrix is destroyed.
inline Rational determinant(std::vector<std::vector<Rational>> m) {
    const size_t d = m.size();
    Rational det = 1;
    for (size_t col = 0; col < d; ++col) {
        size_t pivot = col;
        while (pivot < d && m[pivot][col] == 0) ++pivot;
        if (pivot == d) return Rational(0);
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (size_t row = col + 1; row < d; ++row) {
            if (m[row][col] == 0) continue;
            Rational factor = m[row][col] / m[col][col];
            for (size_t j = col; j < d; ++j) m[row][j] -= factor * m[col][j];
        }
    }
    return det;
}

// Solve the square system m * x = rhs exactly; throws if singular.
inline std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> m,
                                          std::vector<Rational> rhs) {
    const size_t d = m.size();
    for (size_t col = 0; col < d; ++col) {
        size_t pivot = col;
        while (pivot < d && m[pivot][col] == 0) ++pivot;
        if (pivot == d) throw std::invalid_argument("solve_linear: singular matrix");
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            std::swap(rhs[pivot], rhs[col]);
        }
        for (size_t row = 0; row < d; ++row) {
            if (row == col || m[row][col] == 0) continue;
            Rational factor = m[row][col] / m[col][col];
            for (size_t j = col; j < d; ++j) m[row][j] -= factor * m[col][j];
            rhs[row] -= factor * rhs[col];
        }
    }
    std::vector<Rational> x(d);
    for (size_t i = 0; i < d; ++i) x[i] = rhs[i] / m[i][i];
    return x;
}

inline std::vector<std::vector<Rational>> cp_matrix(const std::vector<uint64_t>& ps,
                                                    size_t rows) {
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(ps.size()));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < ps.size(); ++j) m[i][j] = cp_value(ps[j], i + 1);
    return m;
}

}  // namespace detail

// Block counts p_1 < p_2 < ... < p_ell: p_1 = 1 and each p_j is the smallest
// value in (p_{j-1}, p_{j-1} + j + 1] that keeps the leading system
// { C_{p_j}(i) } invertible.
inline std::vector<uint64_t> select_ps(uint32_t ell) {
    if (ell == 0) throw std::invalid_argument("select_ps: ell must be positive");
    std::vector<uint64_t> ps{1};
    for (uint32_t j = 2; j <= ell; ++j) {
        bool found = false;
        for (uint64_t cand = ps.back() + 1; cand <= ps.back() + j + 1; ++cand) {
            std::vector<uint64_t> trial = ps;
            trial.push_back(cand);
            if (detail::determinant(detail::cp_matrix(trial, j)) != 0) {
                ps = std::move(trial);
                found = true;
                break;
            }
        }
        if (!found)
            throw std::logic_error("select_ps: no invertible extension at position " +
                                   std::to_string(j));
    }
    return ps;
}

// Solve sum_j x_j C_{p_j}(i) = i for i = 1..ell.
inline std::vector<Rational> solve_coefficients(const std::vector<uint64_t>& ps) {
    std::vector<Rational> rhs(ps.size());
    for (size_t i = 0; i < ps.size(); ++i) rhs[i] = Rational(i + 1);
    return detail::solve_linear(detail::cp_matrix(ps, ps.size()), std::move(rhs));
}

struct GoodBadSpec {
    uint32_t ell = 0;
    std::vector<uint64_t> ps;
    std::vector<Rational> xs;

    // good(y) = y + sum over negative coefficients of (-x_j) C_{p_j}(y)
    Rational good(uint64_t y) const {
        Rational v(y);
        for (size_t j = 0; j < ps.size(); ++j)
            if (xs[j] < 0) v += (-xs[j]) * cp_value(ps[j], y);
        return v;
    }
    // bad(y) = sum over positive coefficients of x_j C_{p_j}(y)
    Rational bad_single(uint64_t y) const {
        Rational v(0);
        for (size_t j = 0; j < ps.size(); ++j)
            if (xs[j] > 0) v += xs[j] * cp_value(ps[j], y);
        return v;
    }
};

inline GoodBadSpec make_good_bad(uint32_t ell) {
    GoodBadSpec spec;
    spec.ell = ell;
    spec.ps = select_ps(ell);
    spec.xs = solve_coefficients(spec.ps);
    return spec;
}

// ---------------------------------------------------------------------------
// Partitioned ground set: r disjoint target parts of size k plus a mask.
// ---------------------------------------------------------------------------

struct PartitionP {
    uint32_t n = 0, k = 0, r = 0;
    std::vector<std::vector<uint32_t>> part_ids;  // r parts, each sorted, size k
    std::vector<uint32_t> mask_ids;               // sorted, size n - r*k
};

inline PartitionP sample_partition(uint32_t n, uint32_t k, uint32_t r, Rng& rng) {
    if (r == 0 || k == 0) throw std::invalid_argument("sample_partition: need k, r >= 1");
    if (uint64_t(r) * k > n)
        throw std::invalid_argument("sample_partition: r*k exceeds ground size");
    std::vector<uint32_t> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    for (uint32_t j = 0; j + 1 < n; ++j) {
        uint64_t s = j + rng.below(n - j);
        std::swap(ids[j], ids[s]);
    }
    PartitionP part;
    part.n = n;
    part.k = k;
    part.r = r;
    part.part_ids.resize(r);
    for (uint32_t t = 0; t < r; ++t) {
        part.part_ids[t].assign(ids.begin() + ptrdiff_t(t) * k, ids.begin() + ptrdiff_t(t + 1) * k);
        std::sort(part.part_ids[t].begin(), part.part_ids[t].end());
    }
    part.mask_ids.assign(ids.begin() + ptrdiff_t(r) * k, ids.end());
    std::sort(part.mask_ids.begin(), part.mask_ids.end());
    return part;
}

// ---------------------------------------------------------------------------
// Hard instances: partition + masking + one planted part whose weighting is
// "good" while all others are "bad".
// ---------------------------------------------------------------------------

enum class HardFamily { CoverageClosed, CoveragePoly, Submodular };

inline std::string family_name(HardFamily f) {
    switch (f) {
        case HardFamily::CoverageClosed: return "coverage-closed";
        case HardFamily::CoveragePoly: return "coverage-poly";
        case HardFamily::Submodular: return "submodular";
    }
    return "?";
}

inline HardFamily family_from_name(const std::string& s) {
    if (s == "coverage-closed") return HardFamily::CoverageClosed;
    if (s == "coverage-poly") return HardFamily::CoveragePoly;
    if (s == "submodular") return HardFamily::Submodular;
    throw std::invalid_argument("unknown instance family: " + s);
}

struct HardInstance {
    HardFamily family = HardFamily::CoverageClosed;
    uint32_t n = 0, k = 0, r = 0, ell = 0, sigma = 0;
    uint32_t good_index = 0;
    uint64_t seed = 0;
    PartitionP partition;
    GoodBadSpec weights;                 // coverage families
    std::vector<uint32_t> mask_col;      // per ground element; sigma for non-mask
    CoverageGraph good_local, bad_local; // polynomial family, ground [k]
    std::string graph_file;             // optional sidecar written next to the instance

    // derived lookups
    std::vector<int32_t> part_of;    // -1 = mask element
    std::vector<uint32_t> local_id;  // position within its part
    uint64_t sqrt_n = 0, quarter_root_n = 0, log2_n = 0;  // submodular constants
    Rational total_weight;  // W = good(k) + (r-1) * bad(k) for coverage families

    Rational good_size_value(uint64_t y) const { return weights.good(y); }
    Rational bad_size_value(uint64_t y) const { return weights.bad_single(y); }
};

namespace detail {

inline void derive_lookups(HardInstance& inst) {
    inst.part_of.assign(inst.n, -1);
    inst.local_id.assign(inst.n, 0);
    for (uint32_t t = 0; t < inst.r; ++t) {
        const auto& ids = inst.partition.part_ids[t];
        for (uint32_t j = 0; j < ids.size(); ++j) {
            inst.part_of[ids[j]] = static_cast<int32_t>(t);
            inst.local_id[ids[j]] = j;
        }
    }
}

inline void derive_coverage_totals(HardInstance& inst) {
    Rational g_k, b_k;
    if (inst.family == HardFamily::CoveragePoly) {
        ElementSet full = ElementSet::full(inst.k);
        g_k = inst.good_local.value(full);
        b_k = inst.bad_local.value(full);
    } else {
        g_k = inst.weights.good(inst.k);
        b_k = inst.weights.bad_single(inst.k);
    }
    inst.total_weight = g_k + Rational(inst.r - 1) * b_k;
}

// Scaled union of the singleton graph and the selected C_p graphs, split by
// coefficient sign.
inline void build_local_graphs(HardInstance& inst) {
    const uint32_t k = inst.k;
    inst.good_local = CoverageGraph{};
    inst.bad_local = CoverageGraph{};
    inst.good_local.n = k;
    inst.bad_local.n = k;
    for (uint32_t e = 0; e < k; ++e)
        inst.good_local.children.push_back({Rational(1), ElementSet::singleton(k, e)});
    for (size_t j = 0; j < inst.weights.ps.size(); ++j) {
        const Rational& x = inst.weights.xs[j];
        if (x == 0) continue;
        CoverageGraph cp = build_cp_graph(inst.weights.ps[j], k, inst.ell);
        CoverageGraph& target = (x < 0) ? inst.good_local : inst.bad_local;
        Rational scale = (x < 0) ? -x : x;
        for (auto& child : cp.children)
            target.children.push_back({scale * child.weight, std::move(child.parents)});
    }
}

}  // namespace detail

inline HardInstance build_coverage_hard(uint32_t n, uint32_t k, uint32_t r, uint32_t ell,
                                        uint32_t sigma, uint64_t seed, bool polynomial_graph) {
    if (sigma == 0) throw std::invalid_argument("coverage instance needs sigma >= 1");
    if (polynomial_graph) validate_zeta_params(k, ell);
    HardInstance inst;
    inst.family = polynomial_graph ? HardFamily::CoveragePoly : HardFamily::CoverageClosed;
    inst.n = n;
    inst.k = k;
    inst.r = r;
    inst.ell = ell;
    inst.sigma = sigma;
    inst.seed = seed;
    Rng part_rng = Rng::substream(seed, 0);
    inst.partition = sample_partition(n, k, r, part_rng);
    inst.weights = make_good_bad(ell);
    Rng col_rng = Rng::substream(seed, 1);
    inst.mask_col.assign(n, sigma);
    for (uint32_t e : inst.partition.mask_ids)
        inst.mask_col[e] = static_cast<uint32_t>(col_rng.below(sigma));
    if (polynomial_graph) detail::build_local_graphs(inst);
    detail::derive_lookups(inst);
    detail::derive_coverage_totals(inst);
    return inst;
}

inline bool is_power_of_two(uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

inline HardInstance build_submodular_hard(uint32_t n, uint32_t k, uint32_t r, uint64_t seed) {
    const uint64_t s = integer_sqrt(n);
    const uint64_t q = integer_sqrt(s);
    if (!is_power_of_two(n) || q * q != s || s * s != n)
        throw std::invalid_argument(
            "submodular instance needs n to be a power of two with an integer fourth root");
    HardInstance inst;
    inst.family = HardFamily::Submodular;
    inst.n = n;
    inst.k = k;
    inst.r = r;
    inst.ell = 0;
    inst.sigma = 0;
    inst.seed = seed;
    Rng part_rng = Rng::substream(seed, 0);
    inst.partition = sample_partition(n, k, r, part_rng);
    inst.mask_col.assign(n, 0);
    inst.sqrt_n = s;
    inst.quarter_root_n = q;
    uint64_t lg = 0;
    while ((uint64_t(1) << (lg + 1)) <= n) ++lg;
    inst.log2_n = lg;
    detail::derive_lookups(inst);
    inst.total_weight = Rational(k) + Rational(std::min<uint64_t>(uint64_t(inst.r - 1) * k, lg));
    return inst;
}

inline HardInstance with_good_index(HardInstance inst, uint32_t i) {
    if (i >= inst.r) throw std::invalid_argument("good index out of range");
    inst.good_index = i;
    return inst;
}

// Value of the planted optimum (the good part itself).
inline Rational instance_opt(const HardInstance& inst) {
    if (inst.family == HardFamily::Submodular) return Rational(inst.k);
    if (inst.family == HardFamily::CoveragePoly)
        return inst.good_local.value(ElementSet::full(inst.k));
    return inst.weights.good(inst.k);
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

inline Rational eval_hard(const HardInstance& inst, const ElementSet& S) {
    if (S.ground_size() != inst.n)
        throw std::invalid_argument("eval_hard: ground set size mismatch");
    // Split S into per-part local sets / sizes and the mask part.
    std::vector<ElementSet> local;
    std::vector<uint32_t> part_count(inst.r, 0);
    const bool poly = inst.family == HardFamily::CoveragePoly;
    if (poly) local.assign(inst.r, ElementSet(inst.k));
    uint64_t col_bits = 0;
    uint32_t mask_count = 0;
    S.for_each([&](uint32_t e) {
        int32_t t = inst.part_of[e];
        if (t < 0) {
            ++mask_count;
            if (inst.sigma > 0) col_bits |= uint64_t(1) << inst.mask_col[e];
        } else {
            ++part_count[t];
            if (poly) local[static_cast<size_t>(t)].add(inst.local_id[e]);
        }
    });

    if (inst.family == HardFamily::Submodular) {
        uint64_t bad_total = 0;
        for (uint32_t t = 0; t < inst.r; ++t)
            if (t != inst.good_index) bad_total += part_count[t];
        Rational g(part_count[inst.good_index]);
        Rational b(std::min<uint64_t>(bad_total, inst.log2_n));
        Rational masked =
            mask_count >= inst.sqrt_n ? Rational(1) : Rational(mask_count, inst.sqrt_n);
        Rational lift = Rational(std::min<uint64_t>(mask_count, inst.sqrt_n), inst.quarter_root_n);
        return (Rational(1) - masked) * (g + b) + lift;
    }

    const uint32_t distinct = static_cast<uint32_t>(std::popcount(col_bits));
    Rational m(distinct, inst.sigma);
    Rational g, b;
    if (poly) {
        g = inst.good_local.value(local[inst.good_index]);
        for (uint32_t t = 0; t < inst.r; ++t)
            if (t != inst.good_index) b += inst.bad_local.value(local[t]);
    } else {
        g = inst.weights.good(part_count[inst.good_index]);
        for (uint32_t t = 0; t < inst.r; ++t)
            if (t != inst.good_index) b += inst.weights.bad_single(part_count[t]);
    }
    return (Rational(1) - m) * (g + b) + m * inst.total_weight;
}

inline SetFunction make_set_function(const HardInstance& inst) {
    auto shared = std::make_shared<HardInstance>(inst);
    std::string label = "hard[" + family_name(inst.family) + " n=" + std::to_string(inst.n) +
                        " k=" + std::to_string(inst.k) + " r=" + std::to_string(inst.r) +
                        " i=" + std::to_string(inst.good_index) + "]";
    return SetFunction(
        inst.n, FnKind::HardInstanceFn, label,
        [shared](const ElementSet& S) { return eval_hard(*shared, S); });
}

// ---------------------------------------------------------------------------
// Explicit coverage graph for the polynomial family: every local child is
// split into sigma equal copies and copy c is additionally covered by every
// mask element assigned to column c. Covered children contribute their full
// weight; an uncovered child still contributes the masked fraction, so the
// graph value equals the closed evaluation exactly.
// ---------------------------------------------------------------------------

inline CoverageGraph explicit_graph(const HardInstance& inst) {
    if (inst.family != HardFamily::CoveragePoly)
        throw std::invalid_argument("explicit_graph: only the polynomial coverage family "
                                    "has an explicit graph");
    std::vector<std::vector<uint32_t>> column_members(inst.sigma);
    for (uint32_t e : inst.partition.mask_ids) column_members[inst.mask_col[e]].push_back(e);

    CoverageGraph g;
    g.n = inst.n;
    auto embed = [&](const CoverageGraph& local_graph, uint32_t part) {
        const auto& ids = inst.partition.part_ids[part];
        for (const auto& child : local_graph.children) {
            ElementSet parents(inst.n);
            child.parents.for_each([&](uint32_t loc) { parents.add(ids[loc]); });
            Rational w = child.weight / Rational(inst.sigma);
            for (uint32_t c = 0; c < inst.sigma; ++c) {
                ElementSet copy = parents;
                for (uint32_t e : column_members[c]) copy.add(e);
                g.children.push_back({w, std::move(copy)});
            }
        }
    };
    for (uint32_t t = 0; t < inst.r; ++t)
        embed(t == inst.good_index ? inst.good_local : inst.bad_local, t);
    return g;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace detail {

inline std::string join_u32(const std::vector<uint32_t>& xs) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(xs[i]);
    }
    return out;
}

inline std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string value_of(const std::string& token, const std::string& key) {
    return expect_key(token, key);
}

}  // namespace detail

inline void write_hard_instance(const HardInstance& inst, std::ostream& os) {
    os << "hardinstance family=" << family_name(inst.family) << " n=" << inst.n
       << " k=" << inst.k << " r=" << inst.r << " ell=" << inst.ell << " sigma=" << inst.sigma
       << " i=" << inst.good_index << " seed=" << inst.seed << "\n";
    if (inst.family != HardFamily::Submodular) {
        os << "ps=";
        for (size_t j = 0; j < inst.weights.ps.size(); ++j)
            os << (j ? "," : "") << inst.weights.ps[j];
        os << "\nxs=";
        for (size_t j = 0; j < inst.weights.xs.size(); ++j)
            os << (j ? "," : "") << format_rational(inst.weights.xs[j]);
        os << "\n";
    }
    os << "partition=";
    for (uint32_t t = 0; t < inst.r; ++t)
        os << (t ? ";" : "") << "T" << (t + 1) << ":" << detail::join_u32(inst.partition.part_ids[t]);
    os << ";M:" << detail::join_u32(inst.partition.mask_ids) << "\n";
    if (inst.family != HardFamily::Submodular) {
        os << "maskcols=";
        for (size_t j = 0; j < inst.partition.mask_ids.size(); ++j) {
            uint32_t e = inst.partition.mask_ids[j];
            os << (j ? "," : "") << e << ":" << inst.mask_col[e];
        }
        os << "\n";
    }
    if (inst.family == HardFamily::CoveragePoly && !inst.graph_file.empty())
        os << "graph=" << inst.graph_file << "\n";
}

inline HardInstance read_hard_instance(std::istream& is) {
    std::string word;
    if (!(is >> word) || word != "hardinstance")
        throw std::invalid_argument("instance parse: expected 'hardinstance' header");
    HardInstance inst;
    auto next = [&](const std::string& key) {
        std::string tok;
        if (!(is >> tok)) throw std::invalid_argument("instance parse: truncated header");
        return detail::value_of(tok, key);
    };
    inst.family = family_from_name(next("family"));
    inst.n = static_cast<uint32_t>(std::stoul(next("n")));
    inst.k = static_cast<uint32_t>(std::stoul(next("k")));
    inst.r = static_cast<uint32_t>(std::stoul(next("r")));
    inst.ell = static_cast<uint32_t>(std::stoul(next("ell")));
    inst.sigma = static_cast<uint32_t>(std::stoul(next("sigma")));
    inst.good_index = static_cast<uint32_t>(std::stoul(next("i")));
    inst.seed = std::stoull(next("seed"));

    inst.partition.n = inst.n;
    inst.partition.k = inst.k;
    inst.partition.r = inst.r;
    inst.mask_col.assign(inst.n, inst.sigma);

    std::string line;
    std::getline(is, line);  // finish header line
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("instance parse: bad line '" + line + "'");
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        if (key == "ps") {
            inst.weights.ps.clear();
            for (const auto& piece : detail::split_on(val, ','))
                inst.weights.ps.push_back(std::stoull(piece));
        } else if (key == "xs") {
            inst.weights.xs.clear();
            for (const auto& piece : detail::split_on(val, ','))
                inst.weights.xs.push_back(parse_rational(piece));
        } else if (key == "partition") {
            auto groups = detail::split_on(val, ';');
            if (groups.size() != size_t(inst.r) + 1)
                throw std::invalid_argument("instance parse: expected r parts plus mask");
            inst.partition.part_ids.assign(inst.r, {});
            for (uint32_t t = 0; t < inst.r; ++t) {
                std::string want = "T" + std::to_string(t + 1);
                auto colon = groups[t].find(':');
                if (colon == std::string::npos || groups[t].substr(0, colon) != want)
                    throw std::invalid_argument("instance parse: expected part " + want);
                for (const auto& piece : detail::split_on(groups[t].substr(colon + 1), ','))
                    if (!piece.empty())
                        inst.partition.part_ids[t].push_back(
                            static_cast<uint32_t>(std::stoul(piece)));
            }
            auto colon = groups[inst.r].find(':');
            if (colon == std::string::npos || groups[inst.r].substr(0, colon) != "M")
                throw std::invalid_argument("instance parse: expected mask group");
            inst.partition.mask_ids.clear();
            for (const auto& piece : detail::split_on(groups[inst.r].substr(colon + 1), ','))
                if (!piece.empty())
                    inst.partition.mask_ids.push_back(static_cast<uint32_t>(std::stoul(piece)));
        } else if (key == "maskcols") {
            for (const auto& piece : detail::split_on(val, ',')) {
                if (piece.empty()) continue;
                auto colon = piece.find(':');
                if (colon == std::string::npos)
                    throw std::invalid_argument("instance parse: bad maskcols entry");
                auto e = static_cast<uint32_t>(std::stoul(piece.substr(0, colon)));
                auto c = static_cast<uint32_t>(std::stoul(piece.substr(colon + 1)));
                if (e >= inst.n || c >= inst.sigma)
                    throw std::invalid_argument("instance parse: maskcols out of range");
                inst.mask_col[e] = c;
            }
        } else if (key == "graph") {
            inst.graph_file = val;
        } else {
            throw std::invalid_argument("instance parse: unknown key '" + key + "'");
        }
    }
    inst.weights.ell = inst.ell;
    if (inst.partition.part_ids.size() != inst.r)
        throw std::invalid_argument("instance parse: missing partition line");
    for (const auto& ids : inst.partition.part_ids) {
        if (ids.size() != inst.k)
            throw std::invalid_argument("instance parse: part size differs from k");
        for (uint32_t e : ids)
            if (e >= inst.n) throw std::invalid_argument("instance parse: element out of range");
    }
    if (inst.partition.mask_ids.size() != size_t(inst.n) - size_t(inst.r) * inst.k)
        throw std::invalid_argument("instance parse: mask size differs from n - r*k");
    if (inst.family != HardFamily::Submodular) {
        if (inst.weights.ps.size() != inst.ell || inst.weights.xs.size() != inst.ell)
            throw std::invalid_argument("instance parse: ps/xs must list ell entries");
        for (uint32_t e : inst.partition.mask_ids)
            if (inst.mask_col[e] >= inst.sigma)
                throw std::invalid_argument("instance parse: mask element " + std::to_string(e) +
                                            " has no column");
    }
    if (inst.family == HardFamily::CoveragePoly) detail::build_local_graphs(inst);
    detail::derive_lookups(inst);
    if (inst.family == HardFamily::Submodular) {
        inst.sqrt_n = integer_sqrt(inst.n);
        inst.quarter_root_n = integer_sqrt(inst.sqrt_n);
        uint64_t lg = 0;
        while ((uint64_t(1) << (lg + 1)) <= inst.n) ++lg;
        inst.log2_n = lg;
        inst.total_weight =
            Rational(inst.k) + Rational(std::min<uint64_t>(uint64_t(inst.r - 1) * inst.k, lg));
    } else {
        detail::derive_coverage_totals(inst);
    }
    return inst;
}

inline void write_hard_instance_file(HardInstance& inst, const std::string& path) {
    if (inst.family == HardFamily::CoveragePoly) {
        std::string stem = path;
        auto slash = stem.find_last_of('/');
        auto dot = stem.find_last_of('.');
        if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
            stem = stem.substr(0, dot);
        std::string graph_path = stem + ".graph";
        CoverageGraph g = explicit_graph(inst);
        write_coverage_file(graph_path, g);
        auto gslash = graph_path.find_last_of('/');
        inst.graph_file = gslash == std::string::npos ? graph_path : graph_path.substr(gslash + 1);
    }
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for write: " + path);
    write_hard_instance(inst, os);
}

inline HardInstance read_hard_instance_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for read: " + path);
    return read_hard_instance(is);
}

}  // namespace ops
