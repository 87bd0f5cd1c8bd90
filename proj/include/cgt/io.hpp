/*
 * Copyright 2026 The cgt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CGT_IO_HPP
#define CGT_IO_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cgt/coalition.hpp"
#include "cgt/diffusion.hpp"
#include "cgt/errors.hpp"
#include "cgt/game.hpp"
#include "cgt/network_games.hpp"
#include "cgt/survey.hpp"

namespace cgt {

inline constexpr const char* kVersion = "0.1.0";

/// Bijection between external player labels and dense indices. Outputs
/// always speak labels; indices never leak.
class LabeledUniverse {
public:
    int add(const std::string& label) {
        auto it = index_.find(label);
        if (it != index_.end()) return it->second;
        if (static_cast<int>(labels_.size()) >= kMaxPlayers)
            throw input_error("labels: more than " + std::to_string(kMaxPlayers) + " players");
        const int idx = static_cast<int>(labels_.size());
        labels_.push_back(label);
        index_.emplace(label, idx);
        return idx;
    }

    int resolve(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw input_error("unknown player label '" + label + "'");
        return it->second;
    }

    std::optional<int> find(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& label(int idx) const { return labels_[static_cast<std::size_t>(idx)]; }
    int size() const { return static_cast<int>(labels_.size()); }

    static LabeledUniverse numbered(int n) {
        LabeledUniverse u;
        for (int i = 1; i <= n; ++i) u.add(std::to_string(i));
        return u;
    }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
};

namespace io_detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ' ' || ch == '\t' || ch == ',' || ch == ';' || ch == '\r') {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

inline double parse_real(const std::string& token, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(token, &pos);
        if (pos != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw input_error(where + ": '" + token + "' is not a number");
    }
}

inline std::uint64_t parse_mask(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number_unsigned())
        throw input_error(where + ": coalition masks must be unsigned integers");
    return j.get<std::uint64_t>();
}

/// Applies `fn(line_number, tokens)` to every non-blank, non-comment line.
template <typename Fn>
void for_each_line(const std::string& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw input_error(path + ": cannot open file");
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        fn(line_no, tokens);
    }
}

}  // namespace io_detail

struct LoadedGame {
    Game game;
    LabeledUniverse labels;
};

/// Explicit game file, JSON. Either dense worths
///   {"n": 3, "worths": [[mask, value], ...]}   (absent masks are 0)
/// or unanimity-basis coefficients
///   {"n": 3, "dividends": [[mask, coeff], ...]}.
/// Players are auto-labeled "1".."n".
inline LoadedGame load_game_json(const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(io_detail::read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(path + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer())
        throw input_error(path + ": expected an object with an integer field 'n'");
    const int n = doc["n"].get<int>();
    if (n < 1 || n > kMaxPlayers)
        throw input_error(path + ": 'n' must be in 1.." + std::to_string(kMaxPlayers));
    const std::uint64_t universe = Coalition::full(n).mask();

    if (doc.contains("worths")) {
        if (n > kTableCap)
            throw capacity_error(path + ": explicit worth tables are capped at n = " +
                                 std::to_string(kTableCap));
        std::vector<std::pair<std::uint64_t, double>> entries;
        for (const auto& row : doc["worths"]) {
            if (!row.is_array() || row.size() != 2)
                throw input_error(path + ": each worth entry must be [mask, value]");
            const std::uint64_t mask = io_detail::parse_mask(row[0], path);
            if (mask & ~universe)
                throw input_error(path + ": mask " + std::to_string(mask) +
                                  " is outside the " + std::to_string(n) + "-player universe");
            const double value = row[1].get<double>();
            if (mask == 0 && value != 0.0)
                throw input_error(path + ": the empty coalition must be worth 0");
            entries.emplace_back(mask, value);
        }
        return LoadedGame{table_game(n, entries), LabeledUniverse::numbered(n)};
    }
    if (doc.contains("dividends")) {
        Dividends d;
        for (const auto& row : doc["dividends"]) {
            if (!row.is_array() || row.size() != 2)
                throw input_error(path + ": each dividend entry must be [mask, coeff]");
            const std::uint64_t mask = io_detail::parse_mask(row[0], path);
            if (mask == 0) throw input_error(path + ": the empty coalition carries no dividend");
            if (mask & ~universe)
                throw input_error(path + ": mask " + std::to_string(mask) +
                                  " is outside the " + std::to_string(n) + "-player universe");
            d[mask] += row[1].get<double>();
        }
        return LoadedGame{dividend_game(n, d), LabeledUniverse::numbered(n)};
    }
    throw input_error(path + ": expected a 'worths' or 'dividends' field");
}

struct LoadedNetwork {
    Network network;
    LabeledUniverse labels;
};

/// Edge list: one "u v [weight]" per line, whitespace or commas, weight
/// defaulting to 1. Node labels are arbitrary tokens, indexed in order
/// of first appearance. '#' starts a comment.
inline LoadedNetwork load_network_edges(const std::string& path) {
    struct RawEdge {
        int u, v;
        double f;
        int line;
    };
    LabeledUniverse labels;
    std::vector<RawEdge> edges;
    io_detail::for_each_line(path, [&](int line_no, const std::vector<std::string>& tok) {
        const std::string where = path + ":" + std::to_string(line_no);
        if (tok.size() != 2 && tok.size() != 3)
            throw input_error(where + ": expected 'u v [weight]'");
        const int u = labels.add(tok[0]);
        const int v = labels.add(tok[1]);
        const double f = tok.size() == 3 ? io_detail::parse_real(tok[2], where) : 1.0;
        edges.push_back(RawEdge{u, v, f, line_no});
    });
    if (labels.size() == 0) throw input_error(path + ": no edges found");
    Network net(labels.size());
    for (const RawEdge& e : edges) {
        try {
            net.add_edge(e.u, e.v, e.f);
        } catch (const input_error& err) {
            throw input_error(path + ":" + std::to_string(e.line) + ": " + err.what());
        }
    }
    return LoadedNetwork{std::move(net), std::move(labels)};
}

/// Node-weight lines "u w". Unknown labels create isolated nodes;
/// unlisted nodes keep weight 0.
inline void load_node_weights(const std::string& path, LoadedNetwork& net) {
    std::vector<std::pair<int, double>> weights;
    io_detail::for_each_line(path, [&](int line_no, const std::vector<std::string>& tok) {
        const std::string where = path + ":" + std::to_string(line_no);
        if (tok.size() != 2) throw input_error(where + ": expected 'node weight'");
        const auto known = net.labels.find(tok[0]);
        if (!known) throw input_error(where + ": node '" + tok[0] + "' is not in the network");
        weights.emplace_back(*known, io_detail::parse_real(tok[1], where));
    });
    bool touched = false;
    for (const auto& [node, w] : weights) {
        net.network.set_node_weight(node, w);
        touched = true;
    }
    if (!touched) throw input_error(path + ": no node weights found");
}

struct LoadedInfluence {
    InfluenceModel model;
    LabeledUniverse labels;
};

/// Influence lines "i j w": the weight agent i assigns to agent j.
/// Row sums are validated against the unit budget.
inline LoadedInfluence load_influence(const std::string& path) {
    struct RawInfluence {
        int i, j;
        double w;
        int line;
    };
    LabeledUniverse labels;
    std::vector<RawInfluence> rows;
    io_detail::for_each_line(path, [&](int line_no, const std::vector<std::string>& tok) {
        const std::string where = path + ":" + std::to_string(line_no);
        if (tok.size() != 3) throw input_error(where + ": expected 'i j weight'");
        const int i = labels.add(tok[0]);
        const int j = labels.add(tok[1]);
        rows.push_back(RawInfluence{i, j, io_detail::parse_real(tok[2], where), line_no});
    });
    if (labels.size() == 0) throw input_error(path + ": no influence entries found");
    InfluenceModel model(labels.size());
    for (const RawInfluence& r : rows) {
        try {
            model.add_influence(r.i, r.j, r.w);
        } catch (const input_error& err) {
            throw input_error(path + ":" + std::to_string(r.line) + ": " + err.what());
        }
    }
    return LoadedInfluence{std::move(model), std::move(labels)};
}

struct LoadedSurvey {
    SurveyData data;
    LabeledUniverse labels;
};

/// Survey CSV: one respondent per row, attribute failure flags 0/1, the
/// last column the dissatisfaction flag. An optional first row of
/// non-numeric tokens names the attributes.
inline LoadedSurvey load_survey(const std::string& path) {
    std::vector<std::vector<std::string>> rows;
    std::vector<int> lines;
    io_detail::for_each_line(path, [&](int line_no, const std::vector<std::string>& tok) {
        rows.push_back(tok);
        lines.push_back(line_no);
    });
    if (rows.empty()) throw input_error(path + ": empty survey");

    auto is_flag = [](const std::string& t) { return t == "0" || t == "1"; };
    std::size_t first_data = 0;
    LabeledUniverse labels;
    bool has_header = false;
    for (const std::string& t : rows[0])
        if (!is_flag(t)) has_header = true;
    const std::size_t columns = rows[0].size();
    if (columns < 2)
        throw input_error(path + ": need at least one attribute column plus the outcome");

    if (has_header) {
        for (std::size_t c = 0; c + 1 < columns; ++c) labels.add(rows[0][c]);
        first_data = 1;
    } else {
        for (std::size_t c = 0; c + 1 < columns; ++c) labels.add(std::to_string(c + 1));
    }

    std::vector<std::uint64_t> failures;
    std::vector<bool> dissatisfied;
    for (std::size_t r = first_data; r < rows.size(); ++r) {
        const std::string where = path + ":" + std::to_string(lines[r]);
        if (rows[r].size() != columns)
            throw input_error(where + ": expected " + std::to_string(columns) + " columns");
        std::uint64_t mask = 0;
        for (std::size_t c = 0; c + 1 < columns; ++c) {
            if (!is_flag(rows[r][c]))
                throw input_error(where + ", column " + std::to_string(c + 1) +
                                  ": flags must be 0 or 1");
            if (rows[r][c] == "1") mask |= std::uint64_t{1} << c;
        }
        if (!is_flag(rows[r].back()))
            throw input_error(where + ", column " + std::to_string(columns) +
                              ": the outcome must be 0 or 1");
        failures.push_back(mask);
        dissatisfied.push_back(rows[r].back() == "1");
    }
    if (failures.empty()) throw input_error(path + ": no respondent rows");
    return LoadedSurvey{
        SurveyData(static_cast<int>(columns) - 1, std::move(failures), std::move(dissatisfied)),
        std::move(labels)};
}

/// FNV-1a digest of a file's bytes; recorded in run manifests.
inline std::string file_digest(const std::string& path) {
    const std::string bytes = io_detail::read_file(path);
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001B3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

/// Everything needed to reproduce a run byte for byte: the command, the
/// input digests, the seed, and the tool version. Timing is informative
/// only and excluded from reproducible payloads.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;  // (path, digest)
    std::uint64_t seed = 0;
    std::string version = kVersion;
    double elapsed_seconds = 0.0;

    nlohmann::json to_json(bool with_timing) const {
        nlohmann::json j;
        j["command"] = command;
        auto& in = j["inputs"] = nlohmann::json::array();
        for (const auto& [path, digest] : inputs)
            in.push_back({{"path", path}, {"digest", digest}});
        j["seed"] = seed;
        j["version"] = version;
        if (with_timing) j["elapsed_seconds"] = elapsed_seconds;
        return j;
    }
};

/// 12 significant digits, the CSV rendering contract.
inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    return out + "\"";
}

}  // namespace cgt

#endif  // CGT_IO_HPP
