#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "prob.hpp"
#include "solver.hpp"

namespace syndisc {

/// Provenance block written by the generators so emitted files are
/// reproducible: the generator name, its parameters, the seed, and the
/// pinned PRNG algorithm.
struct FileMetadata {
    std::string generator;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::string prng;
};

struct DistributionFile {
    SystemDistribution dist;
    std::vector<std::string> labels;
    FileMetadata metadata;
};

inline nlohmann::json to_json(const SystemDistribution& dist) {
    nlohmann::json j;
    j["source_alphabets"] = dist.source_alphabets();
    j["target_alphabet"] = dist.target_alphabet();
    j["probs"] = dist.probs();
    return j;
}

inline nlohmann::json to_json(const DistributionFile& file) {
    nlohmann::json j = to_json(file.dist);
    if (!file.labels.empty()) j["labels"] = file.labels;
    if (!file.metadata.generator.empty()) {
        nlohmann::json meta;
        meta["generator"] = file.metadata.generator;
        if (!file.metadata.params.empty()) meta["params"] = file.metadata.params;
        if (file.metadata.has_seed) meta["seed"] = file.metadata.seed;
        if (!file.metadata.prng.empty()) meta["prng"] = file.metadata.prng;
        j["metadata"] = meta;
    }
    return j;
}

inline DistributionFile parse_distribution(const nlohmann::json& j) {
    if (!j.is_object()) throw input_error("distribution file: top level must be an object");
    if (!j.contains("source_alphabets") || !j.contains("target_alphabet") || !j.contains("probs"))
        throw input_error("distribution file: missing source_alphabets/target_alphabet/probs");
    std::vector<std::size_t> src;
    std::size_t tgt;
    std::vector<double> probs;
    try {
        src = j.at("source_alphabets").get<std::vector<std::size_t>>();
        tgt = j.at("target_alphabet").get<std::size_t>();
        probs = j.at("probs").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("distribution file: ") + e.what());
    }
    DistributionFile file{SystemDistribution::from_file_data(std::move(src), tgt, std::move(probs)),
                          {},
                          {}};
    if (j.contains("labels")) {
        try {
            file.labels = j.at("labels").get<std::vector<std::string>>();
        } catch (const nlohmann::json::exception& e) {
            throw input_error(std::string("distribution file: labels: ") + e.what());
        }
    }
    if (j.contains("metadata") && j.at("metadata").is_object()) {
        const auto& meta = j.at("metadata");
        if (meta.contains("generator")) file.metadata.generator = meta.at("generator").get<std::string>();
        if (meta.contains("prng")) file.metadata.prng = meta.at("prng").get<std::string>();
        if (meta.contains("seed")) {
            file.metadata.seed = meta.at("seed").get<std::uint64_t>();
            file.metadata.has_seed = true;
        }
        if (meta.contains("params") && meta.at("params").is_object())
            for (auto it = meta.at("params").begin(); it != meta.at("params").end(); ++it)
                file.metadata.params[it.key()] =
                    it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
    }
    return file;
}

inline DistributionFile load_distribution(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open distribution file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw input_error("distribution file " + path + ": " + e.what());
    }
    return parse_distribution(j);
}

inline void save_distribution(const std::string& path, const DistributionFile& file) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write distribution file: " + path);
    out << to_json(file).dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Result tables: CSV with a header row, LF endings, full double precision.
// ---------------------------------------------------------------------------

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells) {
        if (cells.size() != columns.size())
            throw internal_error("ResultTable: row width does not match header");
        rows.push_back(std::move(cells));
    }
};

inline std::string csv_number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

inline void write_csv(std::ostream& out, const ResultTable& table) {
    auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + "\"";
    };
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << quote(table.columns[i]);
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << quote(row[i]);
        out << "\n";
    }
}

inline void write_csv(const std::string& path, const ResultTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write table: " + path);
    write_csv(out, table);
}

// ---------------------------------------------------------------------------
// Solution dumps for cross-checking against external tools.
// ---------------------------------------------------------------------------

inline nlohmann::json channel_to_json(const SynergySolution& sol) {
    nlohmann::json j;
    j["value_bits"] = sol.value;
    j["support"] = sol.support;
    nlohmann::json verts = nlohmann::json::array();
    for (std::size_t v : sol.used_vertices) {
        nlohmann::json entry;
        entry["weight"] = sol.weights[v];
        entry["reverse_column"] = sol.reverse_channel[v];
        entry["objective"] = sol.vertex_objectives[v];
        verts.push_back(entry);
    }
    j["vertices"] = verts;
    nlohmann::json fwd;
    fwd["input_support"] = sol.forward_channel.input_support;
    fwd["output_alphabet"] = sol.forward_channel.output_alphabet;
    fwd["matrix"] = sol.forward_channel.matrix;
    j["forward_channel"] = fwd;
    if (sol.degeneracy_warning) j["degeneracy_warning"] = true;
    return j;
}

/// Full debug dump: every polytope vertex with its objective, plus the LP
/// solution, so the solve can be replayed in an external LP tool.
inline nlohmann::json debug_dump_to_json(const SynergySolution& sol) {
    nlohmann::json j = channel_to_json(sol);
    nlohmann::json all = nlohmann::json::array();
    for (std::size_t v = 0; v < sol.reverse_channel.size(); ++v) {
        nlohmann::json entry;
        entry["reverse_column"] = sol.reverse_channel[v];
        entry["objective"] = sol.vertex_objectives[v];
        entry["weight"] = sol.weights[v];
        all.push_back(entry);
    }
    j["all_vertices"] = all;
    return j;
}

inline void save_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write JSON file: " + path);
    out << j.dump(2) << "\n";
}

} // namespace syndisc
