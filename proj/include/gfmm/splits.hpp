#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "gfmm/errors.hpp"

namespace gfmm {

struct CvPlan {
    int repeats = 10;
    int folds = 4;
    std::uint64_t seed = 0;
};

struct Split {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Uniform draw from [0, n) by rejection; portable across standard library
/// implementations (std::uniform_int_distribution is not).
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

inline void deterministic_shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

/// SplitMix64 finalizer; used to derive independent sub-seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Repeated stratified k-fold assignment. Within each repeat every sample
/// lands in exactly one test fold and per-class counts across folds differ
/// by at most one; classes rarer than the fold count are dealt round-robin.
/// Splits are ordered repeat-major and are deterministic given the seed
/// (sub-seed = seed + repeat index).
inline std::vector<Split> stratified_repeated_kfold(std::span<const int> labels,
                                                    const CvPlan& plan) {
    if (plan.repeats < 1) throw DataError("cross-validation needs repeats >= 1");
    if (plan.folds < 2) throw DataError("cross-validation needs folds >= 2");
    if (labels.empty()) throw DataError("cross-validation needs at least one sample");

    // Class buckets in sorted-class order; indices inside keep file order.
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i)
        by_class[labels[i]].push_back(i);

    const std::size_t folds = static_cast<std::size_t>(plan.folds);
    std::vector<Split> splits;
    splits.reserve(static_cast<std::size_t>(plan.repeats) * folds);

    for (int rep = 0; rep < plan.repeats; ++rep) {
        std::mt19937_64 rng(plan.seed + static_cast<std::uint64_t>(rep));
        std::vector<std::size_t> fold_of(labels.size(), 0);
        std::size_t cursor = 0;
        for (const auto& [cls, members] : by_class) {
            std::vector<std::size_t> order = members;
            deterministic_shuffle(order, rng);
            for (std::size_t i = 0; i < order.size(); ++i)
                fold_of[order[i]] = (cursor + i) % folds;
            cursor = (cursor + order.size()) % folds;
        }
        for (std::size_t f = 0; f < folds; ++f) {
            Split split;
            for (std::size_t i = 0; i < labels.size(); ++i)
                (fold_of[i] == f ? split.test : split.train).push_back(i);
            splits.push_back(std::move(split));
        }
    }
    return splits;
}

}  // namespace gfmm
