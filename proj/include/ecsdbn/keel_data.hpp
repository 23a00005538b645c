#ifndef ECSDBN_KEEL_DATA_HPP
#define ECSDBN_KEEL_DATA_HPP

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ecsdbn/detail/text.hpp"
#include "ecsdbn/errors.hpp"
#include "ecsdbn/matrix.hpp"
#include "ecsdbn/rng.hpp"

namespace ecsdbn {

/// Declared input attribute: numeric, or nominal with its value set.
struct AttributeInfo {
    std::string name;
    bool nominal = false;
    std::vector<std::string> values; // nominal only, declared order
};

/// A parsed KEEL dataset. Features hold raw numeric values with nominal
/// inputs one-hot encoded; min-max normalization is applied later, fitted
/// on the training partition only. For an imbalanced binary dataset the
/// loader relabels classes as majority = 0, minority (positive) = 1.
struct Dataset {
    std::string name;
    Matrix features;                      // N x encoded width
    std::vector<int> labels;              // N entries in {0..K-1}
    std::vector<std::string> class_names; // label index -> original string
    std::size_t minority_class = 0;
    std::vector<AttributeInfo> input_attributes;
    std::string output_name = "Class";

    std::size_t n_samples() const { return features.rows; }
    std::size_t n_attributes() const { return input_attributes.size(); }
    std::size_t n_classes() const { return class_names.size(); }

    std::vector<std::size_t> class_counts() const {
        std::vector<std::size_t> counts(class_names.size(), 0);
        for (int label : labels)
            ++counts[static_cast<std::size_t>(label)];
        return counts;
    }
};

namespace detail {

struct RawAttribute {
    std::string name;
    bool nominal = false;
    bool is_output = false;
    std::vector<std::string> values;
};

inline std::string strip_comment(const std::string& line) {
    auto pos = line.find('%');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

/// Parses "@attribute NAME real [a, b]" / "... integer [a, b]" /
/// "... NAME {v1, v2, ...}". Ranges are accepted and ignored.
inline RawAttribute parse_attribute_decl(const std::string& body, std::size_t line_no) {
    RawAttribute attr;
    std::string rest(trim(body));
    auto name_end = rest.find_first_of(" \t{");
    if (name_end == std::string::npos || name_end == 0)
        throw FormatError("keel: malformed @attribute on line " + std::to_string(line_no));
    attr.name = rest.substr(0, name_end);
    std::string type_part(trim(std::string_view(rest).substr(name_end)));
    if (type_part.empty())
        throw FormatError("keel: missing attribute type on line " + std::to_string(line_no));

    if (type_part.front() == '{') {
        auto close = type_part.find('}');
        if (close == std::string::npos)
            throw FormatError("keel: unterminated nominal set on line " + std::to_string(line_no));
        attr.nominal = true;
        for (const std::string& v : split(type_part.substr(1, close - 1), ',')) {
            std::string value(trim(v));
            if (value.empty())
                throw FormatError("keel: empty nominal value on line " + std::to_string(line_no));
            attr.values.push_back(value);
        }
        if (attr.values.empty())
            throw FormatError("keel: empty nominal set on line " + std::to_string(line_no));
    } else {
        std::string kind = to_lower(type_part.substr(0, type_part.find_first_of(" \t[")));
        if (kind != "real" && kind != "integer" && kind != "numeric")
            throw FormatError("keel: unsupported attribute type '" + kind + "' on line " +
                              std::to_string(line_no));
    }
    return attr;
}

} // namespace detail

/// Parse a KEEL `.dat` stream: `@relation`, `@attribute` declarations,
/// optional `@inputs`/`@outputs`, then comma-separated `@data` rows.
/// Keywords are case-insensitive and `%` starts a comment. The output
/// attribute (from `@outputs`, default: last declared) must be nominal.
inline Dataset parse_keel(std::istream& in) {
    std::vector<detail::RawAttribute> attrs;
    std::vector<std::string> output_names;
    std::string relation = "unnamed";
    bool in_data = false;

    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> row_lines;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string content(detail::trim(detail::strip_comment(line)));
        if (content.empty())
            continue;

        if (!in_data && content.front() == '@') {
            auto space = content.find_first_of(" \t");
            std::string keyword = detail::to_lower(
                content.substr(0, space == std::string::npos ? content.size() : space));
            std::string body =
                space == std::string::npos ? "" : std::string(detail::trim(
                    std::string_view(content).substr(space)));
            if (keyword == "@relation") {
                if (!body.empty())
                    relation = body;
            } else if (keyword == "@attribute") {
                attrs.push_back(detail::parse_attribute_decl(body, line_no));
            } else if (keyword == "@inputs") {
                // informational; attribute order already fixes the layout
            } else if (keyword == "@outputs" || keyword == "@output") {
                for (const std::string& n : detail::split(body, ','))
                    output_names.emplace_back(detail::trim(n));
            } else if (keyword == "@data") {
                in_data = true;
            } else {
                throw FormatError("keel: unknown keyword '" + keyword + "' on line " +
                                  std::to_string(line_no));
            }
            continue;
        }

        if (!in_data)
            throw FormatError("keel: data row before @data on line " + std::to_string(line_no));
        std::vector<std::string> fields;
        for (const std::string& f : detail::split(content, ','))
            fields.emplace_back(detail::trim(f));
        rows.push_back(std::move(fields));
        row_lines.push_back(line_no);
    }

    if (!in_data)
        throw FormatError("keel: missing @data section");
    if (attrs.empty())
        throw FormatError("keel: no @attribute declarations");

    // Resolve the output attribute; default is the last declared one.
    std::size_t output_idx = attrs.size() - 1;
    if (!output_names.empty()) {
        if (output_names.size() != 1)
            throw FormatError("keel: exactly one output attribute is supported");
        bool found = false;
        for (std::size_t a = 0; a < attrs.size(); ++a)
            if (attrs[a].name == output_names.front()) {
                output_idx = a;
                found = true;
            }
        if (!found)
            throw FormatError("keel: @outputs names unknown attribute '" +
                              output_names.front() + "'");
    }
    if (!attrs[output_idx].nominal)
        throw FormatError("keel: output attribute must be nominal");

    Dataset ds;
    ds.name = relation;
    ds.output_name = attrs[output_idx].name;

    std::size_t width = 0;
    for (std::size_t a = 0; a < attrs.size(); ++a) {
        if (a == output_idx)
            continue;
        AttributeInfo info;
        info.name = attrs[a].name;
        info.nominal = attrs[a].nominal;
        info.values = attrs[a].values;
        width += info.nominal ? info.values.size() : 1;
        ds.input_attributes.push_back(std::move(info));
    }

    const std::vector<std::string>& class_values = attrs[output_idx].values;
    ds.features = Matrix(rows.size(), width);
    ds.labels.resize(rows.size());

    std::vector<std::size_t> declared_counts(class_values.size(), 0);
    std::vector<int> declared_labels(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& fields = rows[r];
        if (fields.size() != attrs.size())
            throw FormatError("keel: line " + std::to_string(row_lines[r]) + " has " +
                              std::to_string(fields.size()) + " values, expected " +
                              std::to_string(attrs.size()));
        std::size_t col = 0;
        for (std::size_t a = 0; a < attrs.size(); ++a) {
            const std::string& cell = fields[a];
            if (a == output_idx) {
                auto it = std::find(class_values.begin(), class_values.end(), cell);
                if (it == class_values.end())
                    throw FormatError("keel: unknown class value '" + cell + "' on line " +
                                      std::to_string(row_lines[r]));
                declared_labels[r] = static_cast<int>(it - class_values.begin());
                ++declared_counts[static_cast<std::size_t>(declared_labels[r])];
                continue;
            }
            if (attrs[a].nominal) {
                auto it = std::find(attrs[a].values.begin(), attrs[a].values.end(), cell);
                if (it == attrs[a].values.end())
                    throw FormatError("keel: unknown nominal value '" + cell + "' on line " +
                                      std::to_string(row_lines[r]));
                ds.features(r, col + static_cast<std::size_t>(it - attrs[a].values.begin())) = 1.0;
                col += attrs[a].values.size();
            } else {
                bool ok = false;
                double v = detail::parse_double(cell, ok);
                if (!ok)
                    throw FormatError("keel: bad numeric value '" + cell + "' on line " +
                                      std::to_string(row_lines[r]));
                ds.features(r, col) = v;
                ++col;
            }
        }
    }

    for (std::size_t c = 0; c < class_values.size(); ++c)
        if (declared_counts[c] == 0)
            throw DataError("keel: declared class '" + class_values[c] +
                            "' has no samples");

    // Label mapping. Binary with unequal counts: majority -> 0, minority
    // (positive) -> 1. Otherwise declared order, minority = smallest count
    // with ties to the smaller index.
    std::vector<int> remap(class_values.size());
    std::iota(remap.begin(), remap.end(), 0);
    if (class_values.size() == 2 && declared_counts[0] != declared_counts[1]) {
        int majority = declared_counts[0] >= declared_counts[1] ? 0 : 1;
        remap[static_cast<std::size_t>(majority)] = 0;
        remap[static_cast<std::size_t>(1 - majority)] = 1;
    }
    ds.class_names.resize(class_values.size());
    for (std::size_t c = 0; c < class_values.size(); ++c)
        ds.class_names[static_cast<std::size_t>(remap[c])] = class_values[c];
    for (std::size_t r = 0; r < rows.size(); ++r)
        ds.labels[r] = remap[static_cast<std::size_t>(declared_labels[r])];

    std::vector<std::size_t> counts = ds.class_counts();
    std::size_t minority = 0;
    for (std::size_t c = 1; c < counts.size(); ++c)
        if (counts[c] < counts[minority])
            minority = c;
    ds.minority_class = minority;
    return ds;
}

inline Dataset load_keel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw FormatError("keel: cannot open '" + path + "'");
    Dataset ds = parse_keel(in);
    return ds;
}

/// Emit a Dataset back to KEEL text. One-hot nominal inputs are decoded to
/// their original value strings, so parse -> serialize -> parse is exact.
inline void serialize_keel(const Dataset& ds, std::ostream& os) {
    os << "@relation " << ds.name << '\n';
    for (const AttributeInfo& attr : ds.input_attributes) {
        os << "@attribute " << attr.name << ' ';
        if (attr.nominal) {
            os << '{';
            for (std::size_t v = 0; v < attr.values.size(); ++v)
                os << (v ? ", " : "") << attr.values[v];
            os << '}';
        } else {
            os << "real";
        }
        os << '\n';
    }
    os << "@attribute " << ds.output_name << " {";
    for (std::size_t c = 0; c < ds.class_names.size(); ++c)
        os << (c ? ", " : "") << ds.class_names[c];
    os << "}\n";
    os << "@inputs";
    for (std::size_t a = 0; a < ds.input_attributes.size(); ++a)
        os << (a ? ", " : " ") << ds.input_attributes[a].name;
    os << '\n';
    os << "@outputs " << ds.output_name << '\n';
    os << "@data\n";

    for (std::size_t r = 0; r < ds.n_samples(); ++r) {
        std::size_t col = 0;
        for (std::size_t a = 0; a < ds.input_attributes.size(); ++a) {
            const AttributeInfo& attr = ds.input_attributes[a];
            if (a)
                os << ", ";
            if (attr.nominal) {
                std::size_t hot = 0;
                for (std::size_t v = 0; v < attr.values.size(); ++v)
                    if (ds.features(r, col + v) == 1.0)
                        hot = v;
                os << attr.values[hot];
                col += attr.values.size();
            } else {
                os << detail::format_double(ds.features(r, col));
                ++col;
            }
        }
        os << ", " << ds.class_names[static_cast<std::size_t>(ds.labels[r])] << '\n';
    }
}

// ---------------------------------------------------------------------------
// Normalization

/// Column-wise affine map fitted on training data and reused on test data.
struct MinMaxScaler {
    std::vector<double> mins;
    std::vector<double> maxs;
};

inline MinMaxScaler fit_minmax(const Matrix& features) {
    MinMaxScaler scaler;
    scaler.mins.assign(features.cols, 0.0);
    scaler.maxs.assign(features.cols, 0.0);
    for (std::size_t j = 0; j < features.cols; ++j) {
        double lo = features.rows ? features(0, j) : 0.0;
        double hi = lo;
        for (std::size_t i = 1; i < features.rows; ++i) {
            lo = std::min(lo, features(i, j));
            hi = std::max(hi, features(i, j));
        }
        scaler.mins[j] = lo;
        scaler.maxs[j] = hi;
    }
    return scaler;
}

/// (x - min) / (max - min), constant columns map to 0. With `clip`, values
/// outside the fitted range (test data) are clamped into [0,1].
inline Matrix transform_minmax(const Matrix& features, const MinMaxScaler& scaler,
                               bool clip) {
    if (features.cols != scaler.mins.size())
        throw ShapeError("transform_minmax: column count does not match scaler");
    Matrix out(features.rows, features.cols);
    for (std::size_t j = 0; j < features.cols; ++j) {
        double range = scaler.maxs[j] - scaler.mins[j];
        for (std::size_t i = 0; i < features.rows; ++i) {
            double v = range == 0.0 ? 0.0 : (features(i, j) - scaler.mins[j]) / range;
            out(i, j) = clip ? std::clamp(v, 0.0, 1.0) : v;
        }
    }
    return out;
}

/// Fit-and-transform on one matrix, returning the fitted scaler for reuse.
inline std::pair<Matrix, MinMaxScaler> minmax_normalize(const Matrix& features) {
    MinMaxScaler scaler = fit_minmax(features);
    return {transform_minmax(features, scaler, false), scaler};
}

// ---------------------------------------------------------------------------
// Cross-validation

/// Stratified fold assignment: per-class seeded shuffle, then round-robin
/// over folds, so per-class fold counts differ by at most one.
struct FoldPlan {
    std::size_t k = 5;
    std::uint64_t trial_seed = 0;
    std::vector<std::size_t> assignments; // per-sample fold index
    std::vector<std::string> warnings;

    std::vector<std::size_t> test_indices(std::size_t fold) const {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < assignments.size(); ++i)
            if (assignments[i] == fold)
                idx.push_back(i);
        return idx;
    }
    std::vector<std::size_t> train_indices(std::size_t fold) const {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < assignments.size(); ++i)
            if (assignments[i] != fold)
                idx.push_back(i);
        return idx;
    }
};

inline FoldPlan stratified_kfold(const std::vector<int>& labels, std::size_t k,
                                 std::uint64_t seed) {
    if (k < 2)
        throw ParamError("stratified_kfold: k must be >= 2");
    FoldPlan plan;
    plan.k = k;
    plan.trial_seed = seed;
    plan.assignments.assign(labels.size(), 0);

    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i)
        by_class[labels[i]].push_back(i);

    RngStream rng(seed);
    std::size_t class_no = 0;
    for (auto& [label, indices] : by_class) {
        if (indices.size() < k)
            plan.warnings.push_back("class " + std::to_string(label) + " has only " +
                                    std::to_string(indices.size()) +
                                    " samples for " + std::to_string(k) + " folds");
        RngStream class_rng = rng.derive(class_no++);
        // Fisher-Yates
        for (std::size_t i = indices.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(class_rng.next_below(i));
            std::swap(indices[i - 1], indices[j]);
        }
        for (std::size_t p = 0; p < indices.size(); ++p)
            plan.assignments[indices[p]] = p % k;
    }
    return plan;
}

/// Row subset of a feature matrix plus the matching labels.
inline std::pair<Matrix, std::vector<int>> take_rows(const Matrix& features,
                                                     const std::vector<int>& labels,
                                                     const std::vector<std::size_t>& idx) {
    Matrix out(idx.size(), features.cols);
    std::vector<int> out_labels(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
        std::copy(features.row_ptr(idx[r]), features.row_ptr(idx[r]) + features.cols,
                  out.row_ptr(r));
        out_labels[r] = labels[idx[r]];
    }
    return {out, out_labels};
}

// ---------------------------------------------------------------------------
// Catalog: one dataset per line, "name, train-path, test-path".

struct CatalogEntry {
    std::string name;
    std::string train_path;
    std::string test_path;
};

inline std::vector<CatalogEntry> parse_catalog(std::istream& in) {
    std::vector<CatalogEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string content(detail::trim(line));
        if (content.empty() || content.front() == '#' || content.front() == '%')
            continue;
        std::vector<std::string> fields = detail::split(content, ',');
        if (fields.size() != 3)
            throw FormatError("catalog: line " + std::to_string(line_no) +
                              " needs 'name, train-path, test-path'");
        entries.push_back({std::string(detail::trim(fields[0])),
                           std::string(detail::trim(fields[1])),
                           std::string(detail::trim(fields[2]))});
    }
    return entries;
}

inline std::vector<CatalogEntry> load_catalog_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw FormatError("catalog: cannot open '" + path + "'");
    return parse_catalog(in);
}

} // namespace ecsdbn

#endif
