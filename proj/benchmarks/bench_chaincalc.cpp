#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "chaincalc/chain_file.hpp"
#include "chaincalc/smith.hpp"

namespace cc = chaincalc;
using cc::Int;

namespace {

cc::IntMatrix dense_matrix(std::size_t rows, std::size_t cols, unsigned seed) {
    std::mt19937_64 eng(seed);
    std::uniform_int_distribution<int> entry(-9, 9);
    cc::IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = entry(eng);
    return m;
}

const cc::ChainFile& su11() {
    static cc::ChainFile f = cc::parse_chain_file(cc::find_dataset("su11"));
    return f;
}

const cc::ChainFile& sp4() {
    static cc::ChainFile f = cc::parse_chain_file(cc::find_dataset("sp4"));
    return f;
}

void BM_smith_normal_form(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    cc::IntMatrix m = dense_matrix(n, n, 42);
    for (auto _ : state) {
        cc::SmithDecomposition s = cc::smith_normal_form(m);
        benchmark::DoNotOptimize(s.rank);
    }
}
BENCHMARK(BM_smith_normal_form)->Arg(4)->Arg(8)->Arg(12)->Arg(16);

void BM_integer_kernel(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    cc::IntMatrix m = dense_matrix(n / 2, n, 43);
    for (auto _ : state) {
        cc::IntMatrix k = cc::integer_kernel(m);
        benchmark::DoNotOptimize(k.cols());
    }
}
BENCHMARK(BM_integer_kernel)->Arg(4)->Arg(8)->Arg(12)->Arg(16);

void BM_canonicalize(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    cc::IntMatrix rel = dense_matrix(n, n, 44);
    for (auto _ : state) {
        cc::FgAbelianGroup g = cc::canonicalize(n, rel);
        benchmark::DoNotOptimize(g.ngens());
    }
}
BENCHMARK(BM_canonicalize)->Arg(4)->Arg(8)->Arg(12);

void BM_hilbert_basis(benchmark::State& state) {
    std::size_t r = static_cast<std::size_t>(state.range(0));
    std::vector<Int> weights;
    for (std::size_t i = 0; i < r; ++i)
        weights.push_back(Int(static_cast<long long>(i % 4 + 1) * (i % 2 ? -1 : 1)));
    cc::HilbertConstraint con =
        state.range(1) ? cc::HilbertConstraint::nonnegative : cc::HilbertConstraint::equal_zero;
    for (auto _ : state) {
        auto basis = cc::hilbert_basis(weights, con);
        benchmark::DoNotOptimize(basis.size());
    }
}
BENCHMARK(BM_hilbert_basis)
    ->Args({2, 0})
    ->Args({4, 0})
    ->Args({6, 0})
    ->Args({8, 0})
    ->Args({4, 1})
    ->Args({8, 1});

void BM_classify_simple(benchmark::State& state) {
    const cc::SimpleChainDatum& c = *su11().chains.at("oplus").simple;
    for (auto _ : state) {
        cc::ResidueClass r = cc::classify_line_bundles_simple(c, {Int(1)});
        benchmark::DoNotOptimize(r.m);
    }
}
BENCHMARK(BM_classify_simple);

void BM_fiber_product(benchmark::State& state) {
    const cc::SimpleChainDatum& c = *su11().chains.at("oplus").simple;
    for (auto _ : state) {
        cc::FiberProduct fp = cc::line_bundle_fiber_product(c);
        benchmark::DoNotOptimize(fp.sub.generators().size());
    }
}
BENCHMARK(BM_fiber_product);

void BM_classify_graph(benchmark::State& state) {
    const cc::ChainGraph& g = su11().graphs.at("ntheta");
    for (auto _ : state) {
        cc::GraphClassification cls = cc::classify_line_bundles_graph(cc::build_chain_graph(g));
        benchmark::DoNotOptimize(cls.sub.generators().size());
    }
}
BENCHMARK(BM_classify_graph);

void BM_tame_quotient(benchmark::State& state) {
    const cc::IdealAdicPresentation& p = *sp4().rings.at("adic").adic;
    for (auto _ : state) {
        cc::TameQuotientResult r = cc::tame_quotient(p);
        benchmark::DoNotOptimize(r.components.size());
    }
}
BENCHMARK(BM_tame_quotient);

void BM_parse_chain_file(benchmark::State& state) {
    std::string text = cc::serialize_chain_file(su11());
    for (auto _ : state) {
        cc::ChainFile f = cc::parse_chain_file_text(text, "bench");
        benchmark::DoNotOptimize(f.chains.size());
    }
}
BENCHMARK(BM_parse_chain_file);

} // namespace

BENCHMARK_MAIN();
