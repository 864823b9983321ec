#pragma once

#include "ops/distributions.hpp"
#include "ops/element_set.hpp"
#include "ops/rational.hpp"
#include "ops/rng.hpp"
#include "ops/set_function.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace ops {

struct SampleRecord {
    ElementSet set;
    Rational value;
};

struct SampleSet {
    uint32_t n = 0;
    uint64_t seed = 0;
    std::string dist_descriptor;
    std::vector<SampleRecord> records;

    size_t m() const { return records.size(); }
};

// i.i.d. dataset {(S_j, f(S_j))}. Record j draws from the substream
// (seed, j), so any prefix or reordering of record indices reproduces
// identical sets. Values are memoized per distinct subset.
inline SampleSet generate_dataset(const SetFunction& f, const SubsetDistribution& dist,
                                  size_t m, uint64_t seed) {
    if (dist.n() != f.n())
        throw std::invalid_argument("generate_dataset: distribution/function dimension mismatch");
    SampleSet out;
    out.n = f.n();
    out.seed = seed;
    out.dist_descriptor = dist.descriptor();
    out.records.reserve(m);
    std::unordered_map<ElementSet, Rational, ElementSet::Hash> memo;
    std::vector<uint32_t> scratch, picks;
    for (size_t j = 0; j < m; ++j) {
        Rng rng = Rng::substream(seed, j);
        ElementSet s = dist.sample(rng, scratch, picks);
        auto it = memo.find(s);
        if (it == memo.end()) it = memo.emplace(s, f(s)).first;
        out.records.push_back({std::move(s), it->second});
    }
    return out;
}

// Text format:
//   samples n=<n> m=<m> seed=<seed> dist=<descriptor>
//   S=<i1,i2,...|-> v=<num>/<den>        (one line per record)
inline void write_samples(std::ostream& os, const SampleSet& ss) {
    os << "samples n=" << ss.n << " m=" << ss.records.size() << " seed=" << ss.seed
       << " dist=" << ss.dist_descriptor << "\n";
    for (const auto& r : ss.records)
        os << "S=" << r.set.to_csv() << " v=" << format_rational(r.value) << "\n";
}

inline SampleSet read_samples(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("samples: empty input");
    std::istringstream hs(line);
    std::string magic, ntok, mtok, seedtok, disttok;
    hs >> magic >> ntok >> mtok >> seedtok >> disttok;
    if (magic != "samples") throw std::invalid_argument("samples: bad header");
    SampleSet ss;
    ss.n = static_cast<uint32_t>(std::stoul(detail::expect_key(ntok, "n")));
    size_t m = std::stoul(detail::expect_key(mtok, "m"));
    ss.seed = std::stoull(detail::expect_key(seedtok, "seed"));
    ss.dist_descriptor = detail::expect_key(disttok, "dist");
    ss.records.reserve(m);
    for (size_t j = 0; j < m; ++j) {
        if (!std::getline(is, line)) throw std::invalid_argument("samples: truncated record list");
        std::istringstream ls(line);
        std::string stok, vtok;
        ls >> stok >> vtok;
        SampleRecord r;
        r.set = ElementSet::from_csv(ss.n, detail::expect_key(stok, "S"));
        r.value = parse_rational(detail::expect_key(vtok, "v"));
        ss.records.push_back(std::move(r));
    }
    return ss;
}

inline void write_samples_file(const std::string& path, const SampleSet& ss) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_samples(os, ss);
}

inline SampleSet read_samples_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return read_samples(is);
}

}  // namespace ops
