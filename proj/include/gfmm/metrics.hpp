#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "gfmm/errors.hpp"

namespace gfmm {

/// Square confusion matrix over a fixed, sorted class set. Rows are true
/// classes, columns predicted classes.
class ConfusionMatrix {
public:
    explicit ConfusionMatrix(std::vector<int> classes) : classes_(std::move(classes)) {
        std::sort(classes_.begin(), classes_.end());
        classes_.erase(std::unique(classes_.begin(), classes_.end()), classes_.end());
        if (classes_.empty()) throw DataError("confusion matrix needs at least one class");
        for (std::size_t i = 0; i < classes_.size(); ++i)
            index_[classes_[i]] = i;
        cells_.assign(classes_.size() * classes_.size(), 0);
    }

    void add(int truth, int predicted, std::int64_t count = 1) {
        cells_[row_of(truth) * classes_.size() + row_of(predicted)] += count;
    }

    std::size_t class_count() const { return classes_.size(); }
    const std::vector<int>& classes() const { return classes_; }

    std::int64_t count(int truth, int predicted) const {
        return cells_[row_of(truth) * classes_.size() + row_of(predicted)];
    }

    std::int64_t row_total(int truth) const {
        std::int64_t t = 0;
        std::size_t i = row_of(truth);
        for (std::size_t j = 0; j < classes_.size(); ++j)
            t += cells_[i * classes_.size() + j];
        return t;
    }

    std::int64_t col_total(int predicted) const {
        std::int64_t t = 0;
        std::size_t j = row_of(predicted);
        for (std::size_t i = 0; i < classes_.size(); ++i)
            t += cells_[i * classes_.size() + j];
        return t;
    }

    std::int64_t total() const {
        std::int64_t t = 0;
        for (std::int64_t c : cells_) t += c;
        return t;
    }

private:
    std::size_t row_of(int cls) const {
        auto it = index_.find(cls);
        if (it == index_.end())
            throw DataError("class " + std::to_string(cls) + " not in confusion matrix");
        return it->second;
    }

    std::vector<int> classes_;
    std::unordered_map<int, std::size_t> index_;
    std::vector<std::int64_t> cells_;
};

/// Class balanced accuracy: per class, the correct count divided by the
/// larger of the class's row and column totals, averaged over classes.
/// Robust to class imbalance; 1 exactly for a diagonal matrix.
inline double cba(const ConfusionMatrix& cm) {
    double sum = 0.0;
    for (int cls : cm.classes()) {
        std::int64_t row = cm.row_total(cls);
        std::int64_t col = cm.col_total(cls);
        if (row == 0) throw DataError("class absent from evaluation set");
        sum += static_cast<double>(cm.count(cls, cls)) /
               static_cast<double>(std::max(row, col));
    }
    return sum / static_cast<double>(cm.class_count());
}

}  // namespace gfmm
