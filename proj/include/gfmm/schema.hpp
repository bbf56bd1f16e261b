#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gfmm/errors.hpp"

namespace gfmm {

enum class ColumnKind { Continuous, Categorical, Class, Ignore };

inline std::string to_string(ColumnKind k) {
    switch (k) {
        case ColumnKind::Continuous: return "continuous";
        case ColumnKind::Categorical: return "categorical";
        case ColumnKind::Class: return "class";
        case ColumnKind::Ignore: return "ignore";
    }
    return "?";
}

inline ColumnKind column_kind_from_string(std::string_view s) {
    if (s == "continuous") return ColumnKind::Continuous;
    if (s == "categorical") return ColumnKind::Categorical;
    if (s == "class") return ColumnKind::Class;
    if (s == "ignore") return ColumnKind::Ignore;
    throw DataError("unknown column kind '" + std::string(s) + "'");
}

struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::Ignore;
    /// Declared normalization range for continuous columns. When absent the
    /// range is fitted from training data (see Scaler).
    std::optional<std::pair<double, double>> range;

    bool operator==(const Column&) const = default;
};

/// Ordered column declarations for a dataset: which columns are continuous,
/// which are categorical, and which single column carries the class label.
class FeatureSchema {
public:
    explicit FeatureSchema(std::vector<Column> columns)
        : columns_(std::move(columns)) {
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            const Column& c = columns_[i];
            switch (c.kind) {
                case ColumnKind::Continuous:
                    if (c.range && !(c.range->first < c.range->second))
                        throw DataError("column '" + c.name +
                                        "': declared range must have min < max");
                    continuous_.push_back(i);
                    break;
                case ColumnKind::Categorical:
                    categorical_.push_back(i);
                    break;
                case ColumnKind::Class:
                    if (class_column_)
                        throw DataError("schema declares more than one class column");
                    class_column_ = i;
                    break;
                case ColumnKind::Ignore:
                    break;
            }
        }
        if (!class_column_)
            throw DataError("schema declares no class column");
        if (continuous_.empty() && categorical_.empty())
            throw DataError("schema declares no feature columns");
    }

    const std::vector<Column>& columns() const { return columns_; }

    /// Number of continuous feature dimensions.
    std::size_t continuous_count() const { return continuous_.size(); }
    /// Number of categorical feature dimensions.
    std::size_t categorical_count() const { return categorical_.size(); }

    /// Column indices of the continuous features, in declaration order.
    const std::vector<std::size_t>& continuous_columns() const { return continuous_; }
    /// Column indices of the categorical features, in declaration order.
    const std::vector<std::size_t>& categorical_columns() const { return categorical_; }
    std::size_t class_column() const { return *class_column_; }

    bool operator==(const FeatureSchema& other) const {
        return columns_ == other.columns_;
    }

private:
    std::vector<Column> columns_;
    std::vector<std::size_t> continuous_;
    std::vector<std::size_t> categorical_;
    std::optional<std::size_t> class_column_;
};

/// Incremental string -> id dictionary. Ids are dense and assigned in first
/// encounter order, so streaming ingestion never needs a second pass.
class Interner {
public:
    int intern(std::string_view value) {
        auto it = ids_.find(std::string(value));
        if (it != ids_.end()) return it->second;
        int id = static_cast<int>(names_.size());
        names_.emplace_back(value);
        ids_.emplace(names_.back(), id);
        return id;
    }

    std::optional<int> find(std::string_view value) const {
        auto it = ids_.find(std::string(value));
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& name(int id) const {
        if (id < 0 || id >= static_cast<int>(names_.size()))
            throw DataError("unknown interned id " + std::to_string(id));
        return names_[static_cast<std::size_t>(id)];
    }

    int size() const { return static_cast<int>(names_.size()); }

    bool operator==(const Interner& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> ids_;
};

/// Dictionaries for one dataset: one per categorical attribute plus one for
/// the class labels.
struct Vocabulary {
    std::vector<Interner> attributes;
    Interner labels;

    explicit Vocabulary(std::size_t categorical_count = 0)
        : attributes(categorical_count) {}

    bool operator==(const Vocabulary&) const = default;
};

}  // namespace gfmm
