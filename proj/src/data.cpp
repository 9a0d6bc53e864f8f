#include "metagcn/data.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "metagcn/error.hpp"
#include "metagcn/rng.hpp"

namespace metagcn {

Schema schema_from_string(const std::string& s) {
    if (s == "haberman") return Schema::haberman;
    if (s == "pima_diabetes") return Schema::pima_diabetes;
    if (s == "generic_csv") return Schema::generic_csv;
    throw ParamError("unknown dataset schema: " + s);
}

std::string to_string(Schema s) {
    switch (s) {
        case Schema::haberman: return "haberman";
        case Schema::pima_diabetes: return "pima_diabetes";
        case Schema::generic_csv: return "generic_csv";
    }
    return "?";
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    for (auto& f : fields) {
        const auto b = f.find_first_not_of(" \t");
        const auto e = f.find_last_not_of(" \t");
        f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
    }
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    const auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc() && res.ptr == end && std::isfinite(out);
}

[[noreturn]] void malformed(const std::string& path, std::size_t line_no, const std::string& why) {
    throw DataError(path + ":" + std::to_string(line_no) + ": " + why);
}

std::string file_stem(const std::string& path) {
    const auto slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = base.find_last_of('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
}

}  // namespace

TabularDataset load_dataset(const std::string& path, Schema schema) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset file: " + path);

    std::vector<std::vector<double>> rows;
    std::vector<double> raw_labels;
    std::vector<std::size_t> row_lines;
    std::size_t n_fields = 0;
    std::string line;
    std::size_t line_no = 0;
    bool header_checked = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto fields = split_fields(line);
        if (!header_checked && schema == Schema::generic_csv) {
            header_checked = true;
            double tmp;
            bool numeric = true;
            for (const auto& f : fields) numeric = numeric && parse_double(f, tmp);
            if (!numeric) continue;  // header row
        }
        header_checked = true;
        const std::size_t expected = schema == Schema::haberman        ? 4
                                     : schema == Schema::pima_diabetes ? 9
                                                                       : n_fields;
        if (expected != 0 && fields.size() != expected)
            malformed(path, line_no,
                      "expected " + std::to_string(expected) + " fields, got " +
                          std::to_string(fields.size()));
        if (n_fields == 0) {
            if (fields.size() < 2) malformed(path, line_no, "need at least 2 columns");
            n_fields = fields.size();
        }
        std::vector<double> vals(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i)
            if (!parse_double(fields[i], vals[i]))
                malformed(path, line_no, "unparseable field '" + fields[i] + "'");
        raw_labels.push_back(vals.back());
        vals.pop_back();
        rows.push_back(std::move(vals));
        row_lines.push_back(line_no);
    }
    if (rows.empty()) throw DataError("dataset file has no data rows: " + path);

    TabularDataset d;
    d.name = schema == Schema::generic_csv ? file_stem(path) : to_string(schema);
    d.features = DenseMatrix(rows.size(), n_fields - 1);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < n_fields - 1; ++j) d.features(i, j) = rows[i][j];

    d.labels.resize(raw_labels.size());
    if (schema == Schema::haberman) {
        for (std::size_t i = 0; i < raw_labels.size(); ++i) {
            if (raw_labels[i] == 1.0)
                d.labels[i] = 0;
            else if (raw_labels[i] == 2.0)
                d.labels[i] = 1;
            else
                malformed(path, row_lines[i], "survival label must be 1 or 2");
        }
        d.class_count = 2;
    } else if (schema == Schema::pima_diabetes) {
        for (std::size_t i = 0; i < raw_labels.size(); ++i) {
            if (raw_labels[i] == 0.0)
                d.labels[i] = 0;
            else if (raw_labels[i] == 1.0)
                d.labels[i] = 1;
            else
                malformed(path, i + 1, "label must be 0 or 1");
        }
        d.class_count = 2;
    } else {
        // renumber so more frequent classes get lower ids (binary: minority = 1)
        std::map<double, std::size_t> counts;
        for (double v : raw_labels) {
            if (v != std::floor(v)) throw DataError("non-integral class label in " + path);
            counts[v]++;
        }
        std::vector<std::pair<double, std::size_t>> order(counts.begin(), counts.end());
        std::stable_sort(order.begin(), order.end(),
                         [](const auto& a, const auto& b) { return a.second > b.second; });
        std::map<double, int> remap;
        for (std::size_t c = 0; c < order.size(); ++c) remap[order[c].first] = static_cast<int>(c);
        for (std::size_t i = 0; i < raw_labels.size(); ++i) d.labels[i] = remap[raw_labels[i]];
        d.class_count = counts.size();
    }
    if (d.class_count < 2) throw DataError("dataset has a single class: " + path);

    std::size_t distinct = 0;
    for (std::size_t c = 0; c < d.class_count; ++c)
        distinct += std::count(d.labels.begin(), d.labels.end(), static_cast<int>(c)) > 0;
    if (distinct < 2) throw DataError("dataset has a single class: " + path);
    return d;
}

TabularDataset standardize(const TabularDataset& d, const std::vector<std::size_t>& fit_indices) {
    if (fit_indices.empty()) throw ParamError("standardize: fit_indices must be non-empty");
    for (std::size_t i : fit_indices)
        if (i >= d.n_rows()) throw ParamError("standardize: fit index out of range");
    TabularDataset out = d;
    const double m = static_cast<double>(fit_indices.size());
    for (std::size_t j = 0; j < d.n_features(); ++j) {
        double mean = 0.0;
        for (std::size_t i : fit_indices) mean += d.features(i, j);
        mean /= m;
        double var = 0.0;
        for (std::size_t i : fit_indices) {
            const double c = d.features(i, j) - mean;
            var += c * c;
        }
        const double sd = std::sqrt(var / m);
        const bool constant = sd <= 1e-12 * std::max(1.0, std::abs(mean));
        for (std::size_t i = 0; i < d.n_rows(); ++i)
            out.features(i, j) = constant ? 0.0 : (d.features(i, j) - mean) / sd;
    }
    return out;
}

namespace {

// Largest-remainder allocation of n_c class members to the four splits,
// then corrective moves so train and meta_pool always get at least one.
std::array<std::size_t, 4> allocate_splits(std::size_t n_c) {
    constexpr double fractions[4] = {0.6, 0.1, 0.2, 0.1};
    std::array<std::size_t, 4> counts{};
    std::array<double, 4> frac{};
    std::size_t assigned = 0;
    for (std::size_t s = 0; s < 4; ++s) {
        const double raw = fractions[s] * static_cast<double>(n_c);
        counts[s] = static_cast<std::size_t>(raw);
        frac[s] = raw - static_cast<double>(counts[s]);
        assigned += counts[s];
    }
    std::array<std::size_t, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
    for (std::size_t t = 0; assigned < n_c; ++t, ++assigned) counts[order[t % 4]]++;

    auto donate = [&](std::size_t receiver) {
        std::size_t donor = 4;
        for (std::size_t s : {2, 1, 0, 3}) {  // prefer test, then val, train, meta
            if (s == receiver || counts[s] == 0) continue;
            if (s == 0 && counts[s] <= 1) continue;  // never empty train
            if (donor == 4 || counts[s] > counts[donor]) donor = s;
        }
        if (donor == 4) throw ParamError("split: class too small to stratify");
        counts[donor]--;
        counts[receiver]++;
    };
    if (counts[0] == 0) donate(0);
    if (counts[3] == 0) donate(3);
    return counts;
}

}  // namespace

SplitAssignment split_dataset(const TabularDataset& d, std::uint64_t seed) {
    const std::size_t n = d.n_rows();
    if (n < 10 * d.class_count) throw ParamError("split: need at least 10 rows per class");
    Rng rng = Rng::stream(seed, 0x5917);
    SplitAssignment out;
    for (std::size_t c = 0; c < d.class_count; ++c) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < n; ++i)
            if (d.labels[i] == static_cast<int>(c)) members.push_back(i);
        if (members.size() < 2) throw ParamError("split: class too small to stratify");
        rng.shuffle(members);
        const auto counts = allocate_splits(members.size());
        std::size_t pos = 0;
        for (std::size_t s = 0; s < 4; ++s) {
            auto& dst = s == 0 ? out.train : s == 1 ? out.val : s == 2 ? out.test : out.meta_pool;
            for (std::size_t t = 0; t < counts[s]; ++t) dst.push_back(members[pos++]);
        }
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.val.begin(), out.val.end());
    std::sort(out.test.begin(), out.test.end());
    std::sort(out.meta_pool.begin(), out.meta_pool.end());
    return out;
}

void write_split_manifest(const SplitAssignment& s, std::ostream& out) {
    std::vector<std::pair<std::size_t, const char*>> rows;
    for (std::size_t i : s.train) rows.emplace_back(i, "train");
    for (std::size_t i : s.val) rows.emplace_back(i, "val");
    for (std::size_t i : s.test) rows.emplace_back(i, "test");
    for (std::size_t i : s.meta_pool) rows.emplace_back(i, "meta_pool");
    std::sort(rows.begin(), rows.end());
    for (const auto& [i, name] : rows) out << i << ' ' << name << '\n';
}

SplitAssignment read_split_manifest(std::istream& in, std::size_t n_nodes) {
    SplitAssignment s;
    std::string name;
    std::size_t idx;
    std::vector<bool> seen(n_nodes, false);
    while (in >> idx >> name) {
        if (idx >= n_nodes) throw DataError("split manifest: node index out of range");
        if (seen[idx]) throw DataError("split manifest: duplicate node index");
        seen[idx] = true;
        if (name == "train")
            s.train.push_back(idx);
        else if (name == "val")
            s.val.push_back(idx);
        else if (name == "test")
            s.test.push_back(idx);
        else if (name == "meta_pool")
            s.meta_pool.push_back(idx);
        else
            throw DataError("split manifest: unknown split name '" + name + "'");
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw DataError("split manifest: not all nodes assigned");
    return s;
}

MetaSet sample_meta_set(const TabularDataset& d, const SplitAssignment& splits,
                        const GraphData& g, std::size_t per_class, std::uint64_t seed) {
    if (g.n_nodes != d.n_rows()) throw ParamError("sample_meta_set: graph does not match dataset");
    std::vector<std::vector<std::size_t>> pools(d.class_count);
    for (std::size_t i : splits.meta_pool) pools[static_cast<std::size_t>(d.labels[i])].push_back(i);
    std::size_t take = SIZE_MAX;
    for (std::size_t c = 0; c < d.class_count; ++c) {
        if (pools[c].empty())
            throw ParamError("sample_meta_set: meta pool has no examples of class " +
                             std::to_string(c));
        take = std::min(take, pools[c].size());
    }
    MetaSet ms;
    if (per_class != 0 && per_class < take) take = per_class;
    if (per_class > take && per_class != 0) {
        ms.clamped = true;
        std::cerr << "warning: meta per_class " << per_class << " exceeds pool; using " << take
                  << " per class\n";
    }
    Rng rng = Rng::stream(seed, 0x3e7a);
    for (std::size_t c = 0; c < d.class_count; ++c) {
        std::vector<std::size_t> pool = pools[c];
        rng.shuffle(pool);
        for (std::size_t t = 0; t < take; ++t) ms.node_indices.push_back(pool[t]);
    }
    std::sort(ms.node_indices.begin(), ms.node_indices.end());

    const std::size_t m = ms.node_indices.size();
    ms.x_meta = DenseMatrix(m, d.n_features());
    ms.y_meta.resize(m);
    for (std::size_t t = 0; t < m; ++t) {
        const std::size_t i = ms.node_indices[t];
        for (std::size_t j = 0; j < d.n_features(); ++j) ms.x_meta(t, j) = d.features(i, j);
        ms.y_meta[t] = d.labels[i];
    }
    ms.graph_meta = induced_subgraph(g, ms.node_indices);
    return ms;
}

SmoteResult smote_oversample(const TabularDataset& d, const GraphData& g,
                             const std::vector<std::size_t>& train_indices, double scale,
                             std::size_t k, std::uint64_t seed, const GraphBuildConfig& gcfg) {
    if (d.class_count != 2) throw ParamError("smote_oversample: only binary datasets supported");
    if (!(scale > 0.0)) throw ParamError("smote_oversample: scale must be positive");
    if (k < 1) throw ParamError("smote_oversample: k must be at least 1");

    std::vector<std::size_t> minority, majority;
    for (std::size_t i : train_indices) {
        if (i >= d.n_rows()) throw ParamError("smote_oversample: train index out of range");
        (d.labels[i] == 1 ? minority : majority).push_back(i);
    }
    // the minority is the rarer training class; ties keep the positive class
    if (majority.size() < minority.size()) std::swap(minority, majority);
    if (minority.size() < 2)
        throw ParamError("smote_oversample: need at least 2 minority training examples");
    const int minority_label = d.labels[minority.front()];

    const auto target = static_cast<std::size_t>(
        std::llround(scale * static_cast<double>(majority.size())));
    const std::size_t n_new = target > minority.size() ? target - minority.size() : 0;

    // k nearest minority neighbours of each minority row (euclidean)
    const std::size_t kk = std::min(k, minority.size() - 1);
    std::vector<std::vector<std::size_t>> neighbours(minority.size());
    for (std::size_t a = 0; a < minority.size(); ++a) {
        std::vector<std::pair<double, std::size_t>> dist;
        for (std::size_t b = 0; b < minority.size(); ++b) {
            if (a == b) continue;
            double acc = 0.0;
            for (std::size_t j = 0; j < d.n_features(); ++j) {
                const double diff = d.features(minority[a], j) - d.features(minority[b], j);
                acc += diff * diff;
            }
            dist.emplace_back(acc, minority[b]);
        }
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(kk), dist.end());
        for (std::size_t t = 0; t < kk; ++t) neighbours[a].push_back(dist[t].second);
    }

    const std::size_t n_real = d.n_rows();
    SmoteResult out;
    out.n_synthetic = n_new;
    out.dataset.name = d.name;
    out.dataset.class_count = d.class_count;
    out.dataset.labels = d.labels;
    out.dataset.features = DenseMatrix(n_real + n_new, d.n_features());
    for (std::size_t i = 0; i < n_real; ++i)
        for (std::size_t j = 0; j < d.n_features(); ++j)
            out.dataset.features(i, j) = d.features(i, j);

    Rng rng = Rng::stream(seed, 0x510e);
    for (std::size_t s = 0; s < n_new; ++s) {
        const std::size_t a = rng.uniform_index(minority.size());
        const std::size_t nn = neighbours[a][rng.uniform_index(neighbours[a].size())];
        const double u = rng.uniform();
        const std::size_t row = n_real + s;
        for (std::size_t j = 0; j < d.n_features(); ++j) {
            const double xi = d.features(minority[a], j);
            out.dataset.features(row, j) = xi + u * (d.features(nn, j) - xi);
        }
        out.dataset.labels.push_back(minority_label);
    }

    out.train_indices = train_indices;
    for (std::size_t s = 0; s < n_new; ++s) out.train_indices.push_back(n_real + s);
    std::sort(out.train_indices.begin(), out.train_indices.end());

    out.graph = n_new == 0 ? g
                           : attach_nodes_knn(g, out.dataset.features, n_real, gcfg.k, gcfg.metric);
    return out;
}

DenseMatrix one_hot_labels(const std::vector<int>& labels, std::size_t class_count) {
    DenseMatrix y(labels.size(), class_count);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= class_count)
            throw ParamError("one_hot_labels: label out of range");
        y(i, static_cast<std::size_t>(labels[i])) = 1.0;
    }
    return y;
}

std::vector<std::size_t> class_counts(const std::vector<int>& labels, std::size_t class_count) {
    std::vector<std::size_t> counts(class_count, 0);
    for (int l : labels) {
        if (l < 0 || static_cast<std::size_t>(l) >= class_count)
            throw ParamError("class_counts: label out of range");
        counts[static_cast<std::size_t>(l)]++;
    }
    return counts;
}

}  // namespace metagcn
