#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gfmm/errors.hpp"
#include "gfmm/model.hpp"
#include "gfmm/pattern.hpp"
#include "gfmm/stats.hpp"

namespace gfmm {

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            return out;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

inline double parse_double(const std::string& s, const std::string& context) {
    const std::string t = trim(s);
    if (t.empty()) throw DataError(context + ": missing value");
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw DataError(context + ": '" + t + "' is not a number");
    return v;
}

inline std::int64_t parse_int(const std::string& s, const std::string& context) {
    const std::string t = trim(s);
    if (t.empty()) throw DataError(context + ": missing value");
    char* end = nullptr;
    long long v = std::strtoll(t.c_str(), &end, 10);
    if (end != t.c_str() + t.size())
        throw DataError(context + ": '" + t + "' is not an integer");
    return v;
}

/// Shortest decimal representation that round-trips the double.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

/// Fixed 17-significant-digit representation; also round-trips exactly.
inline std::string format_double_17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline bool plain_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '+' || c == '-';
}

/// Percent-encodes everything outside [A-Za-z0-9_.+-] so names and values
/// survive the whitespace/comma/brace structure of the model format.
inline std::string escape(std::string_view s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (plain_char(c)) {
            out.push_back(c);
        } else {
            unsigned char u = static_cast<unsigned char>(c);
            out.push_back('%');
            out.push_back(hex[u >> 4]);
            out.push_back(hex[u & 0xF]);
        }
    }
    return out;
}

inline std::string unescape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '%') {
            out.push_back(s[i]);
            continue;
        }
        if (i + 2 >= s.size()) throw DataError("truncated escape sequence");
        auto nibble = [](char c) -> int {
            if (c >= '0' && c <= '9') return c - '0';
            if (c >= 'A' && c <= 'F') return c - 'A' + 10;
            if (c >= 'a' && c <= 'f') return c - 'a' + 10;
            throw DataError("invalid escape sequence");
        };
        out.push_back(static_cast<char>(nibble(s[i + 1]) * 16 + nibble(s[i + 2])));
        i += 2;
    }
    return out;
}

inline std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Schema files
// ---------------------------------------------------------------------------

/// Parses the one-column-per-line schema format: `name,kind[,min,max]`,
/// `#` comments and blank lines allowed.
inline FeatureSchema parse_schema(std::istream& in, const std::string& origin) {
    std::vector<Column> columns;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::string context = origin + " line " + std::to_string(line_no);
        std::vector<std::string> parts = detail::split(t, ',');
        if (parts.size() != 2 && parts.size() != 4)
            throw DataError(context + ": expected 'name,kind' or 'name,kind,min,max'");
        Column col;
        col.name = detail::trim(parts[0]);
        if (col.name.empty()) throw DataError(context + ": empty column name");
        try {
            col.kind = column_kind_from_string(detail::trim(parts[1]));
        } catch (const DataError& e) {
            throw DataError(context + ": " + e.what());
        }
        if (parts.size() == 4) {
            if (col.kind != ColumnKind::Continuous)
                throw DataError(context + ": only continuous columns take a range");
            col.range = {detail::parse_double(parts[2], context),
                         detail::parse_double(parts[3], context)};
        }
        columns.push_back(std::move(col));
    }
    try {
        return FeatureSchema(std::move(columns));
    } catch (const DataError& e) {
        throw DataError(origin + ": " + e.what());
    }
}

inline FeatureSchema load_schema(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open schema file '" + path + "'");
    return parse_schema(in, path);
}

// ---------------------------------------------------------------------------
// Dataset files
// ---------------------------------------------------------------------------

/// One typed dataset row: continuous cells parsed (raw, not yet normalized),
/// categorical cells and the label interned.
struct RawRow {
    std::vector<double> continuous;
    std::vector<int> cats;
    std::optional<int> label;
};

struct Dataset {
    std::vector<std::string> column_names;
    std::vector<RawRow> rows;
    /// Data lines as read (without trailing \r), for commands that echo input.
    std::vector<std::string> raw_lines;
};

/// Loads a comma-separated dataset with a header row that must match the
/// schema's column names. Categorical and class cells are interned into
/// `vocab`, growing it as new values appear. Missing cells are an error,
/// except that the class cell may be empty when `require_labels` is false.
inline Dataset load_dataset(const std::string& path, const FeatureSchema& schema,
                            Vocabulary& vocab, bool require_labels = true) {
    if (vocab.attributes.size() != schema.categorical_count())
        throw DataError("vocabulary does not match schema");
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset file '" + path + "'");

    Dataset ds;
    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ds.column_names = detail::split(line, ',');
    const auto& columns = schema.columns();
    if (ds.column_names.size() != columns.size())
        throw DataError(path + ": header has " + std::to_string(ds.column_names.size()) +
                        " columns, schema expects " + std::to_string(columns.size()));
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (detail::trim(ds.column_names[i]) != columns[i].name)
            throw DataError(path + ": header column " + std::to_string(i + 1) + " is '" +
                            ds.column_names[i] + "', schema expects '" + columns[i].name + "'");

    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty()) continue;
        std::vector<std::string> cells = detail::split(line, ',');
        if (cells.size() != columns.size())
            throw DataError(path + " line " + std::to_string(line_no) + ": has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(columns.size()));
        RawRow row;
        std::size_t cat_index = 0;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const std::string cell = detail::trim(cells[c]);
            const std::string context =
                path + " line " + std::to_string(line_no) + ", column '" + columns[c].name + "'";
            switch (columns[c].kind) {
                case ColumnKind::Continuous:
                    row.continuous.push_back(detail::parse_double(cell, context));
                    break;
                case ColumnKind::Categorical:
                    if (cell.empty()) throw DataError(context + ": missing value");
                    row.cats.push_back(vocab.attributes[cat_index].intern(cell));
                    ++cat_index;
                    break;
                case ColumnKind::Class:
                    if (cell.empty()) {
                        if (require_labels) throw DataError(context + ": missing class label");
                    } else {
                        row.label = vocab.labels.intern(cell);
                    }
                    break;
                case ColumnKind::Ignore:
                    break;
            }
        }
        ds.rows.push_back(std::move(row));
        ds.raw_lines.push_back(line);
    }
    return ds;
}

// ---------------------------------------------------------------------------
// Min-max normalization
// ---------------------------------------------------------------------------

/// Per-column min-max ranges, fitted from training rows unless the schema
/// declares a range. apply() maps raw rows into the unit hypercube, clipping
/// out-of-range values; a constant column maps to 0.5.
class Scaler {
public:
    static Scaler fit(std::span<const RawRow> rows, const FeatureSchema& schema) {
        if (rows.empty()) throw DataError("cannot fit scaler: no rows");
        Scaler s;
        const std::size_t n = schema.continuous_count();
        s.ranges_.assign(n, {std::numeric_limits<double>::infinity(),
                             -std::numeric_limits<double>::infinity()});
        for (const RawRow& row : rows) {
            if (row.continuous.size() != n) throw DataError("row does not match schema");
            for (std::size_t j = 0; j < n; ++j) {
                s.ranges_[j].first = std::min(s.ranges_[j].first, row.continuous[j]);
                s.ranges_[j].second = std::max(s.ranges_[j].second, row.continuous[j]);
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            const Column& col = schema.columns()[schema.continuous_columns()[j]];
            if (col.range) s.ranges_[j] = *col.range;
        }
        return s;
    }

    static Scaler from_ranges(std::vector<std::pair<double, double>> ranges) {
        Scaler s;
        s.ranges_ = std::move(ranges);
        return s;
    }

    MixedPattern apply(const RawRow& row) const {
        if (row.continuous.size() != ranges_.size())
            throw DataError("row does not match fitted scaler");
        std::vector<double> scaled(ranges_.size());
        for (std::size_t j = 0; j < ranges_.size(); ++j) {
            auto [lo, hi] = ranges_[j];
            if (hi > lo) {
                double v = (row.continuous[j] - lo) / (hi - lo);
                scaled[j] = std::min(1.0, std::max(0.0, v));
            } else {
                scaled[j] = 0.5;
            }
        }
        return MixedPattern::point(std::move(scaled), row.cats, row.label);
    }

    const std::vector<std::pair<double, double>>& ranges() const { return ranges_; }

    bool operator==(const Scaler&) const = default;

private:
    std::vector<std::pair<double, double>> ranges_;
};

// ---------------------------------------------------------------------------
// Model files
// ---------------------------------------------------------------------------

struct SavedModel {
    GfmmModel model;
    /// Raw-to-unit-hypercube conversion the model was trained with.
    Scaler scaler;
};

/// Writes the versioned line-oriented model format. Reals carry 17
/// significant digits so the round trip is lossless; the trailing line is an
/// FNV-1a checksum of everything before it.
inline void save_model(const GfmmModel& model, const Scaler& scaler,
                       const std::string& path) {
    std::ostringstream out;
    out << "GFMM-MODEL 1\n";
    out << "params theta=" << detail::format_double_17(model.params.theta)
        << " delta=" << detail::format_double_17(model.params.delta)
        << " alpha=" << detail::format_double_17(model.params.alpha) << " gamma=";
    for (std::size_t i = 0; i < model.params.gamma.size(); ++i)
        out << (i ? "," : "") << detail::format_double_17(model.params.gamma[i]);
    out << " variant=" << to_string(model.params.variant) << "\n";

    out << "schema " << model.schema.columns().size() << "\n";
    for (const Column& col : model.schema.columns()) {
        out << "column " << detail::escape(col.name) << "," << to_string(col.kind);
        if (col.range)
            out << "," << detail::format_double_17(col.range->first) << ","
                << detail::format_double_17(col.range->second);
        out << "\n";
    }

    out << "scaler ";
    for (std::size_t j = 0; j < scaler.ranges().size(); ++j)
        out << (j ? "|" : "") << detail::format_double_17(scaler.ranges()[j].first) << ","
            << detail::format_double_17(scaler.ranges()[j].second);
    out << "\n";

    out << "labels ";
    for (int i = 0; i < model.vocab.labels.size(); ++i)
        out << (i ? "," : "") << detail::escape(model.vocab.labels.name(i));
    out << "\n";
    for (std::size_t a = 0; a < model.vocab.attributes.size(); ++a) {
        out << "attribute " << a << " ";
        for (int i = 0; i < model.vocab.attributes[a].size(); ++i)
            out << (i ? "," : "") << detail::escape(model.vocab.attributes[a].name(i));
        out << "\n";
    }

    out << "boxes " << model.boxes.size() << "\n";
    for (const Hyperbox& b : model.boxes) {
        out << "box label=" << detail::escape(model.vocab.labels.name(b.label))
            << " n=" << b.sample_count << " seq=" << b.created_seq << " V=";
        for (std::size_t j = 0; j < b.min_point.size(); ++j)
            out << (j ? "," : "") << detail::format_double_17(b.min_point[j]);
        out << " W=";
        for (std::size_t j = 0; j < b.max_point.size(); ++j)
            out << (j ? "," : "") << detail::format_double_17(b.max_point[j]);
        out << " D=";
        for (std::size_t a = 0; a < b.categories.size(); ++a) {
            out << (a ? "|" : "") << "attr" << a << ":{";
            bool first = true;
            for (const auto& [value, count] : b.categories[a].counts()) {
                out << (first ? "" : ";")
                    << detail::escape(model.vocab.attributes[a].name(value)) << "=" << count;
                first = false;
            }
            out << "}";
        }
        out << "\n";
    }

    std::string body = out.str();
    char checksum[32];
    std::snprintf(checksum, sizeof(checksum), "%016llx",
                  static_cast<unsigned long long>(detail::fnv1a(body)));

    std::ofstream file(path, std::ios::binary);
    if (!file) throw DataError("cannot open '" + path + "' for writing");
    file << body << "checksum " << checksum << "\n";
    if (!file) throw DataError("failed writing model file '" + path + "'");
}

namespace detail {

inline std::pair<std::string, std::string> key_value(const std::string& token,
                                                     const std::string& context) {
    std::size_t eq = token.find('=');
    if (eq == std::string::npos)
        throw DataError(context + ": expected key=value, got '" + token + "'");
    return {token.substr(0, eq), token.substr(eq + 1)};
}

inline std::vector<double> parse_double_list(const std::string& s, const std::string& context) {
    std::vector<double> out;
    if (s.empty()) return out;
    for (const std::string& part : split(s, ','))
        out.push_back(parse_double(part, context));
    return out;
}

}  // namespace detail

/// Reads a model file back. Checksum and version failures are rejected
/// before any content is interpreted.
inline SavedModel load_model(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw DataError("cannot open model file '" + path + "'");
    std::stringstream buffer;
    buffer << file.rdbuf();
    std::string content = buffer.str();

    // Split off the checksum line and verify it over the preceding bytes.
    std::size_t mark = content.rfind("checksum ");
    if (mark == std::string::npos || (mark > 0 && content[mark - 1] != '\n'))
        throw DataError(path + ": missing checksum line");
    std::string body = content.substr(0, mark);
    std::string checksum_line = detail::trim(content.substr(mark));
    char expected[32];
    std::snprintf(expected, sizeof(expected), "checksum %016llx",
                  static_cast<unsigned long long>(detail::fnv1a(body)));
    if (checksum_line != expected)
        throw DataError(path + ": model file checksum mismatch");

    std::istringstream in(body);
    std::string line;
    int line_no = 0;
    auto next_line = [&](const char* what) -> std::string {
        if (!std::getline(in, line))
            throw DataError(path + ": unexpected end of file, expected " + what);
        ++line_no;
        return line;
    };
    auto context = [&]() { return path + " line " + std::to_string(line_no); };

    std::string header = next_line("header");
    if (header != "GFMM-MODEL 1") {
        if (header.rfind("GFMM-MODEL", 0) == 0)
            throw DataError(path + ": unsupported model version '" + header + "'");
        throw DataError(path + ": not a GFMM model file");
    }

    // params
    std::string params_line = next_line("params");
    if (params_line.rfind("params ", 0) != 0) throw DataError(context() + ": expected params");
    HyperParams params;
    for (const std::string& token : detail::split(params_line.substr(7), ' ')) {
        if (token.empty()) continue;
        auto [key, value] = detail::key_value(token, context());
        if (key == "theta") params.theta = detail::parse_double(value, context());
        else if (key == "delta") params.delta = detail::parse_double(value, context());
        else if (key == "alpha") params.alpha = detail::parse_double(value, context());
        else if (key == "gamma") params.gamma = detail::parse_double_list(value, context());
        else if (key == "variant") params.variant = variant_from_string(value);
        else throw DataError(context() + ": unknown params key '" + key + "'");
    }

    // schema
    std::string schema_line = next_line("schema");
    if (schema_line.rfind("schema ", 0) != 0) throw DataError(context() + ": expected schema");
    std::int64_t column_count = detail::parse_int(schema_line.substr(7), context());
    std::vector<Column> columns;
    for (std::int64_t i = 0; i < column_count; ++i) {
        std::string col_line = next_line("column");
        if (col_line.rfind("column ", 0) != 0) throw DataError(context() + ": expected column");
        std::vector<std::string> parts = detail::split(col_line.substr(7), ',');
        if (parts.size() != 2 && parts.size() != 4)
            throw DataError(context() + ": malformed column declaration");
        Column col;
        col.name = detail::unescape(parts[0]);
        col.kind = column_kind_from_string(parts[1]);
        if (parts.size() == 4)
            col.range = {detail::parse_double(parts[2], context()),
                         detail::parse_double(parts[3], context())};
        columns.push_back(std::move(col));
    }
    FeatureSchema schema(std::move(columns));

    // scaler
    std::string scaler_line = next_line("scaler");
    if (scaler_line.rfind("scaler", 0) != 0) throw DataError(context() + ": expected scaler");
    std::vector<std::pair<double, double>> ranges;
    std::string ranges_text = scaler_line.size() > 7 ? scaler_line.substr(7) : "";
    if (!detail::trim(ranges_text).empty()) {
        for (const std::string& part : detail::split(ranges_text, '|')) {
            std::vector<std::string> mm = detail::split(part, ',');
            if (mm.size() != 2) throw DataError(context() + ": malformed scaler range");
            ranges.emplace_back(detail::parse_double(mm[0], context()),
                                detail::parse_double(mm[1], context()));
        }
    }
    if (ranges.size() != schema.continuous_count())
        throw DataError(context() + ": scaler ranges do not match schema");

    // vocabularies
    Vocabulary vocab(schema.categorical_count());
    std::string labels_line = next_line("labels");
    if (labels_line.rfind("labels", 0) != 0) throw DataError(context() + ": expected labels");
    std::string labels_text = labels_line.size() > 7 ? labels_line.substr(7) : "";
    if (!labels_text.empty())
        for (const std::string& name : detail::split(labels_text, ','))
            vocab.labels.intern(detail::unescape(name));
    for (std::size_t a = 0; a < schema.categorical_count(); ++a) {
        std::string attr_line = next_line("attribute");
        if (attr_line.rfind("attribute ", 0) != 0)
            throw DataError(context() + ": expected attribute");
        std::istringstream attr(attr_line.substr(10));
        std::int64_t index = -1;
        attr >> index;
        if (index != static_cast<std::int64_t>(a))
            throw DataError(context() + ": attribute lines out of order");
        std::string names_text;
        std::getline(attr, names_text);
        names_text = detail::trim(names_text);
        if (!names_text.empty())
            for (const std::string& name : detail::split(names_text, ','))
                vocab.attributes[a].intern(detail::unescape(name));
    }

    GfmmModel model = make_model(std::move(schema), std::move(vocab), params);

    // boxes
    std::string boxes_line = next_line("boxes");
    if (boxes_line.rfind("boxes ", 0) != 0) throw DataError(context() + ": expected boxes");
    std::int64_t box_count = detail::parse_int(boxes_line.substr(6), context());
    for (std::int64_t i = 0; i < box_count; ++i) {
        std::string box_line = next_line("box");
        if (box_line.rfind("box ", 0) != 0) throw DataError(context() + ": expected box");
        Hyperbox b;
        for (const std::string& token : detail::split(box_line.substr(4), ' ')) {
            if (token.empty()) continue;
            auto [key, value] = detail::key_value(token, context());
            if (key == "label") {
                std::optional<int> id = model.vocab.labels.find(detail::unescape(value));
                if (!id) throw DataError(context() + ": box label not in label dictionary");
                b.label = *id;
            } else if (key == "n") {
                b.sample_count = detail::parse_int(value, context());
            } else if (key == "seq") {
                b.created_seq = detail::parse_int(value, context());
            } else if (key == "V") {
                b.min_point = detail::parse_double_list(value, context());
            } else if (key == "W") {
                b.max_point = detail::parse_double_list(value, context());
            } else if (key == "D") {
                if (value.empty()) continue;
                for (const std::string& attr_part : detail::split(value, '|')) {
                    std::size_t colon = attr_part.find(':');
                    if (colon == std::string::npos || attr_part.rfind("attr", 0) != 0)
                        throw DataError(context() + ": malformed D entry");
                    std::size_t attr_idx = static_cast<std::size_t>(detail::parse_int(
                        attr_part.substr(4, colon - 4), context()));
                    if (attr_idx >= model.categorical_count())
                        throw DataError(context() + ": D attribute index out of range");
                    std::string inner = attr_part.substr(colon + 1);
                    if (inner.size() < 2 || inner.front() != '{' || inner.back() != '}')
                        throw DataError(context() + ": malformed D entry");
                    inner = inner.substr(1, inner.size() - 2);
                    if (b.categories.size() <= attr_idx) b.categories.resize(attr_idx + 1);
                    for (const std::string& pair : detail::split(inner, ';')) {
                        if (pair.empty()) continue;
                        auto [val_name, count_text] = detail::key_value(pair, context());
                        std::optional<int> id =
                            model.vocab.attributes[attr_idx].find(detail::unescape(val_name));
                        if (!id)
                            throw DataError(context() + ": value not in attribute dictionary");
                        std::int64_t count = detail::parse_int(count_text, context());
                        if (count < 1) throw DataError(context() + ": non-positive count");
                        for (std::int64_t k = 0; k < count; ++k) b.categories[attr_idx].add(*id);
                    }
                }
            } else {
                throw DataError(context() + ": unknown box key '" + key + "'");
            }
        }
        b.categories.resize(model.categorical_count());
        if (b.min_point.size() != model.continuous_count() ||
            b.max_point.size() != model.continuous_count())
            throw DataError(context() + ": box dimensions do not match schema");
        model.boxes.push_back(std::move(b));
    }
    model.next_seq = static_cast<std::int64_t>(model.boxes.size());

    return SavedModel{std::move(model), Scaler::from_ranges(std::move(ranges))};
}

// ---------------------------------------------------------------------------
// Results tables
// ---------------------------------------------------------------------------

struct ResultRow {
    std::string dataset;
    std::string method;
    double theta = 1.0;
    double delta = 1.0;
    /// A number for fixed alpha, otherwise the policy name (auto, est-v1, ...).
    std::string alpha;
    std::string gamma;
    std::string variant;
    int repeats = 0;
    int folds = 0;
    std::uint64_t seed = 0;
    double mean_cba = 0.0;
    double std_cba = 0.0;
};

inline constexpr const char* kResultsHeader =
    "dataset,method,theta,delta,alpha,gamma,variant,repeats,folds,seed,mean_cba,std_cba";

inline void write_results_rows(std::ostream& out, std::span<const ResultRow> rows,
                               bool with_header) {
    if (with_header) out << kResultsHeader << "\n";
    for (const ResultRow& r : rows) {
        out << r.dataset << "," << r.method << "," << detail::format_double(r.theta) << ","
            << detail::format_double(r.delta) << "," << r.alpha << "," << r.gamma << ","
            << r.variant << "," << r.repeats << "," << r.folds << "," << r.seed << ","
            << detail::format_double(r.mean_cba) << "," << detail::format_double(r.std_cba)
            << "\n";
    }
}

/// Writes (or appends to) a results CSV with a fixed header and stable
/// column order.
inline void write_results_table(std::span<const ResultRow> rows, const std::string& path,
                                bool append = false) {
    const bool exists =
        append && std::filesystem::exists(path) && std::filesystem::file_size(path) > 0;
    std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    write_results_rows(out, rows, !exists);
    if (!out) throw DataError("failed writing results table '" + path + "'");
}

/// Reads a datasets x methods score matrix: header `dataset,<method...>`,
/// one row per dataset.
inline RankTable load_rank_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open table file '" + path + "'");
    RankTable table;
    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header = detail::split(line, ',');
    if (header.size() < 3)
        throw DataError(path + ": need a dataset column and at least two methods");
    table.methods.assign(header.begin() + 1, header.end());
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty()) continue;
        std::vector<std::string> cells = detail::split(line, ',');
        if (cells.size() != header.size())
            throw DataError(path + " line " + std::to_string(line_no) +
                            ": cell count does not match header");
        table.datasets.push_back(detail::trim(cells[0]));
        std::vector<double> row;
        for (std::size_t i = 1; i < cells.size(); ++i)
            row.push_back(detail::parse_double(
                cells[i], path + " line " + std::to_string(line_no)));
        table.scores.push_back(std::move(row));
    }
    table.validate();
    return table;
}

}  // namespace gfmm
