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

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cgt/axioms.hpp"
#include "cgt/coalition.hpp"
#include "cgt/diffusion.hpp"
#include "cgt/errors.hpp"
#include "cgt/estimation.hpp"
#include "cgt/game.hpp"
#include "cgt/io.hpp"
#include "cgt/network_games.hpp"
#include "cgt/search.hpp"
#include "cgt/shapley.hpp"
#include "cgt/survey.hpp"

namespace {

using nlohmann::json;

std::chrono::steady_clock::time_point g_start;
std::vector<CLI::Option*> g_seed_options;

struct CommonOpts {
    std::string game_path;
    std::string network_path;
    std::string family;
    std::string weights_path;
    std::string influence_path;
    std::string survey_path;
    std::uint64_t diffusion_runs = 5000;
    bool mc = false;
    std::uint64_t iters = 100000;
    std::uint64_t batch = 4096;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out_path;
    std::string format = "csv";
};

void add_input_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--game", o.game_path, "explicit game file (JSON worths or dividends)");
    cmd->add_option("--network", o.network_path, "edge-list file: lines 'u v [weight]'");
    cmd->add_option("--family", o.family, "conn | wconn | wconn2 (with --network)");
    cmd->add_option("--weights", o.weights_path, "node-weight file: lines 'u w' (with --network)");
    cmd->add_option("--influence", o.influence_path, "influence file: lines 'i j w'");
    cmd->add_option("--survey", o.survey_path, "survey CSV, last column the outcome flag");
    cmd->add_option("--diffusion-runs", o.diffusion_runs,
                    "threshold samples per coalition for influence games");
    cmd->add_flag("--mc", o.mc, "estimate by permutation sampling instead of exact enumeration");
    cmd->add_option("--iters", o.iters, "sampling iterations");
    cmd->add_option("--batch", o.batch, "sampling draws per worker stream");
    g_seed_options.push_back(
        cmd->add_option("--seed", o.seed, "random seed (default: CGT_SEED or 0)"));
    cmd->add_option("--out", o.out_path, "write machine output to this file");
    cmd->add_option("--format", o.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
}

void resolve_seed(CommonOpts& o) {
    if (o.seed_given) return;
    if (const char* env = std::getenv("CGT_SEED")) {
        try {
            o.seed = std::stoull(env);
        } catch (const std::exception&) {
            throw cgt::input_error("CGT_SEED: '" + std::string(env) + "' is not a seed");
        }
    }
}

struct Input {
    cgt::Game game;
    cgt::LabeledUniverse labels;
};

Input load_input(const CommonOpts& o, cgt::RunManifest& manifest) {
    int sources = 0;
    for (const std::string* p :
         {&o.game_path, &o.network_path, &o.influence_path, &o.survey_path})
        if (!p->empty()) ++sources;
    if (sources != 1)
        throw cgt::input_error(
            "exactly one input source is required: --game, --network, --influence or --survey");
    if (!o.family.empty() && o.network_path.empty())
        throw cgt::input_error("--family needs --network");
    if (!o.weights_path.empty() && o.network_path.empty())
        throw cgt::input_error("--weights needs --network");

    if (!o.game_path.empty()) {
        manifest.inputs.emplace_back(o.game_path, cgt::file_digest(o.game_path));
        auto loaded = cgt::load_game_json(o.game_path);
        return Input{std::move(loaded.game), std::move(loaded.labels)};
    }
    if (!o.network_path.empty()) {
        if (o.family.empty())
            throw cgt::input_error("--network needs --family conn|wconn|wconn2");
        manifest.inputs.emplace_back(o.network_path, cgt::file_digest(o.network_path));
        auto loaded = cgt::load_network_edges(o.network_path);
        if (!o.weights_path.empty()) {
            manifest.inputs.emplace_back(o.weights_path, cgt::file_digest(o.weights_path));
            cgt::load_node_weights(o.weights_path, loaded);
        }
        cgt::Game game = [&]() -> cgt::Game {
            if (o.family == "conn") return cgt::connectivity_game(std::move(loaded.network));
            if (o.family == "wconn") return cgt::wconn_game(std::move(loaded.network));
            if (o.family == "wconn2") {
                if (o.weights_path.empty())
                    throw cgt::input_error("--family wconn2 needs --weights");
                return cgt::wconn2_game(std::move(loaded.network));
            }
            throw cgt::input_error("--family must be conn, wconn or wconn2");
        }();
        // graph worths are cheap per call but ranking and sampling hit them
        // millions of times; a table pays for itself quickly
        if (game.player_count() <= 18) game = cgt::tabulate(game);
        return Input{std::move(game), std::move(loaded.labels)};
    }
    if (!o.influence_path.empty()) {
        manifest.inputs.emplace_back(o.influence_path, cgt::file_digest(o.influence_path));
        auto loaded = cgt::load_influence(o.influence_path);
        cgt::Game game =
            cgt::linear_threshold_game(std::move(loaded.model), o.diffusion_runs, o.seed);
        return Input{std::move(game), std::move(loaded.labels)};
    }
    manifest.inputs.emplace_back(o.survey_path, cgt::file_digest(o.survey_path));
    auto loaded = cgt::load_survey(o.survey_path);
    cgt::Game game = cgt::reach_noise_game(std::move(loaded.data));
    if (game.player_count() <= 18) game = cgt::tabulate(game);
    return Input{std::move(game), std::move(loaded.labels)};
}

cgt::Coalition parse_group(const std::string& csv, const cgt::LabeledUniverse& labels) {
    cgt::Coalition group = cgt::Coalition::empty();
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        group = group.with(labels.resolve(cur));
        cur.clear();
    };
    for (char ch : csv) {
        if (ch == ',') flush();
        else cur += ch;
    }
    flush();
    if (group.is_empty()) throw cgt::input_error("the group must name at least one player");
    return group;
}

std::vector<std::string> group_labels(cgt::Coalition c, const cgt::LabeledUniverse& labels) {
    std::vector<std::string> out;
    for (int i : c.members()) out.push_back(labels.label(i));
    return out;
}

std::string join_labels(const std::vector<std::string>& labels) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += "+";
        out += labels[i];
    }
    return out;
}

/// Machine output goes to --out or stdout; the manifest (with timing)
/// goes to the diagnostic stream. JSON payloads embed the manifest
/// without timing so reruns produce identical bytes.
void emit(const CommonOpts& o, cgt::RunManifest& manifest, const std::string& csv_text,
          json payload) {
    manifest.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - g_start).count();
    std::string text;
    if (o.format == "json") {
        payload["manifest"] = manifest.to_json(false);
        text = payload.dump(2) + "\n";
    } else {
        text = csv_text;
    }
    if (!o.out_path.empty()) {
        std::ofstream out(o.out_path, std::ios::binary);
        if (!out) throw cgt::input_error(o.out_path + ": cannot open for writing");
        out << text;
    } else {
        std::cout << text;
    }
    std::cerr << "manifest: " << manifest.to_json(true).dump() << "\n";
}

void require_exact_cap(int n) {
    if (n > cgt::kExactCap)
        throw cgt::capacity_error("exact mode is capped at n = " + std::to_string(cgt::kExactCap) +
                                  " (got n = " + std::to_string(n) +
                                  "); rerun with --mc --iters N");
}

cgt::SamplerConfig sampler_of(const CommonOpts& o) {
    return cgt::SamplerConfig{o.iters, o.seed, o.batch};
}

int run_value(const CommonOpts& o, cgt::RunManifest& manifest) {
    const Input in = load_input(o, manifest);
    const int n = in.game.player_count();
    struct Row {
        int player;
        double value;
        std::optional<double> std_err;
    };
    std::vector<Row> rows;
    if (o.mc) {
        const auto estimates = cgt::mc_shapley(in.game, sampler_of(o));
        for (int i = 0; i < n; ++i)
            rows.push_back(Row{i, estimates[static_cast<std::size_t>(i)].mean,
                               estimates[static_cast<std::size_t>(i)].std_err});
    } else {
        require_exact_cap(n);
        const auto phi = cgt::shapley_value(in.game);
        for (int i = 0; i < n; ++i)
            rows.push_back(Row{i, phi[static_cast<std::size_t>(i)], std::nullopt});
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.value > b.value; });

    std::string csv = o.mc ? "label,value,std_err\n" : "label,value\n";
    json results = json::array();
    for (const Row& r : rows) {
        const std::string& label = in.labels.label(r.player);
        csv += cgt::csv_field(label) + "," + cgt::format_real(r.value);
        json item{{"label", label}, {"value", r.value}};
        if (r.std_err) {
            csv += "," + cgt::format_real(*r.std_err);
            item["std_err"] = *r.std_err;
        }
        csv += "\n";
        results.push_back(std::move(item));
    }
    emit(o, manifest, csv, json{{"results", std::move(results)}});
    return 0;
}

int run_group_value(const CommonOpts& o, const std::string& group_csv, bool explain,
                    cgt::RunManifest& manifest) {
    const Input in = load_input(o, manifest);
    const cgt::Coalition group = parse_group(group_csv, in.labels);

    json payload;
    payload["group"] = group_labels(group, in.labels);
    std::string csv;
    if (o.mc) {
        const cgt::Estimate e = cgt::mc_group_value(in.game, group, sampler_of(o));
        csv = "group,value,std_err\n" +
              cgt::csv_field(join_labels(group_labels(group, in.labels))) + "," +
              cgt::format_real(e.mean) + "," + cgt::format_real(e.std_err) + "\n";
        payload["value"] = e.mean;
        payload["std_err"] = e.std_err;
        payload["method"] = "monte-carlo";
    } else {
        const auto result = cgt::shapley_group_value(in.game, group);
        csv = "group,value\n" + cgt::csv_field(join_labels(group_labels(group, in.labels))) +
              "," + cgt::format_real(result.value) + "\n";
        payload["value"] = result.value;
        payload["method"] = "exact";
    }
    if (explain) {
        if (o.mc)
            throw cgt::input_error("--explain needs exact mode (drop --mc)");
        require_exact_cap(in.game.player_count());
        const auto trace = cgt::greedy_trace_members(in.game, group);
        json steps = json::array();
        csv += "step,label,marginal,independent,complementarity,value_after\n";
        int step_no = 1;
        for (const auto& step : trace.steps) {
            const std::string& label = in.labels.label(step.player);
            csv += std::to_string(step_no) + "," + cgt::csv_field(label) + "," +
                   cgt::format_real(step.marginal) + "," +
                   cgt::format_real(step.independent.value_or(0.0)) + "," +
                   cgt::format_real(step.complementarity.value_or(0.0)) + "," +
                   cgt::format_real(step.value_after) + "\n";
            steps.push_back(json{{"label", label},
                                 {"marginal", step.marginal},
                                 {"independent", step.independent.value_or(0.0)},
                                 {"complementarity", step.complementarity.value_or(0.0)},
                                 {"value_after", step.value_after}});
            ++step_no;
        }
        payload["explain"] = std::move(steps);
    }
    emit(o, manifest, csv, std::move(payload));
    return 0;
}

int run_rank(const CommonOpts& o, int size, int top, const std::string& method,
             cgt::RunManifest& manifest) {
    const Input in = load_input(o, manifest);
    cgt::SearchConfig cfg;
    cfg.k = size;
    cfg.top_m = top;
    cfg.method = (method == "mc" || o.mc) ? cgt::ValueMethod::monte_carlo
                                          : cgt::ValueMethod::exact;
    cfg.sampler = sampler_of(o);
    const auto entries = cgt::rank_groups(in.game, cfg);

    const bool with_err = cfg.method == cgt::ValueMethod::monte_carlo;
    std::string csv = with_err ? "rank,group,value,std_err\n" : "rank,group,value\n";
    json results = json::array();
    for (const auto& e : entries) {
        const auto labels = group_labels(e.group, in.labels);
        csv += std::to_string(e.rank) + "," + cgt::csv_field(join_labels(labels)) + "," +
               cgt::format_real(e.value);
        json item{{"rank", e.rank}, {"group", labels}, {"value", e.value}};
        if (e.std_err) {
            csv += "," + cgt::format_real(*e.std_err);
            item["std_err"] = *e.std_err;
        }
        csv += "\n";
        results.push_back(std::move(item));
    }
    emit(o, manifest, csv, json{{"results", std::move(results)}});
    return 0;
}

int run_complementarity(const CommonOpts& o, const std::string& pair_csv,
                        cgt::RunManifest& manifest) {
    const Input in = load_input(o, manifest);
    const cgt::Coalition pair = parse_group(pair_csv, in.labels);
    if (pair.size() != 2) throw cgt::input_error("--pair must name exactly two players");
    require_exact_cap(in.game.player_count());
    const auto ij = pair.members();
    const double psi = cgt::average_complementarity(in.game, ij[0], ij[1]);
    const auto labels = group_labels(pair, in.labels);
    const std::string csv =
        "pair,psi\n" + cgt::csv_field(join_labels(labels)) + "," + cgt::format_real(psi) + "\n";
    emit(o, manifest, csv, json{{"pair", labels}, {"psi", psi}});
    return 0;
}

int run_profitability(const CommonOpts& o, const std::string& group_csv,
                      cgt::RunManifest& manifest) {
    const Input in = load_input(o, manifest);
    const cgt::Coalition group = parse_group(group_csv, in.labels);
    require_exact_cap(in.game.player_count());
    const auto report = cgt::profitability(in.game, group);
    const auto labels = group_labels(group, in.labels);
    const std::string csv =
        "group,group_value,additive_value,surplus,derks_tijs_sufficient\n" +
        cgt::csv_field(join_labels(labels)) + "," + cgt::format_real(report.group_value) + "," +
        cgt::format_real(report.additive_value) + "," + cgt::format_real(report.surplus) + "," +
        (report.derks_tijs_sufficient ? "true" : "false") + "\n";
    emit(o, manifest, csv,
         json{{"group", labels},
              {"group_value", report.group_value},
              {"additive_value", report.additive_value},
              {"surplus", report.surplus},
              {"derks_tijs_sufficient", report.derks_tijs_sufficient}});
    return 0;
}

json witness_json(const cgt::Witness& w) {
    json j;
    j["n"] = w.n;
    j["worths"] = w.worths;
    if (!w.worths_second.empty()) j["worths_second"] = w.worths_second;
    auto players_of = [](cgt::Coalition c) {
        json arr = json::array();
        for (int i : c.members()) arr.push_back(i + 1);  // 1-based, matching auto labels
        return arr;
    };
    j["group"] = players_of(w.group);
    if (!w.group_second.is_empty()) j["group_second"] = players_of(w.group_second);
    if (w.player_i >= 0) j["player_i"] = w.player_i + 1;
    if (w.player_j >= 0) j["player_j"] = w.player_j + 1;
    j["lhs"] = w.lhs;
    j["rhs"] = w.rhs;
    j["note"] = w.note;
    return j;
}

int run_axioms(const CommonOpts& o, const std::string& functional, double alpha, double shift_k,
               const std::string& suite_path, cgt::SuiteSpec spec, cgt::RunManifest& manifest) {
    if (!suite_path.empty()) {
        manifest.inputs.emplace_back(suite_path, cgt::file_digest(suite_path));
        json doc;
        try {
            doc = json::parse(cgt::io_detail::read_file(suite_path));
        } catch (const json::parse_error& e) {
            throw cgt::input_error(suite_path + ": " + e.what());
        }
        if (doc.contains("n_range")) {
            spec.n_min = doc["n_range"].at(0).get<int>();
            spec.n_max = doc["n_range"].at(1).get<int>();
        }
        if (doc.contains("games_per_n")) spec.games_per_n = doc["games_per_n"].get<int>();
        if (doc.contains("seed")) spec.seed = doc["seed"].get<std::uint64_t>();
        if (doc.contains("tolerance")) spec.tolerance = doc["tolerance"].get<double>();
    }
    if (spec.n_min < 1 || spec.n_max < spec.n_min || spec.n_max > 12)
        throw cgt::input_error("axioms: the n range must satisfy 1 <= n_min <= n_max <= 12");

    cgt::GroupValueFunctional fn = [&]() -> cgt::GroupValueFunctional {
        if (functional == "shapley") return cgt::shapley_group_functional();
        if (functional == "additive") return cgt::additive_group_functional();
        if (functional == "alpha") return cgt::counterexample_alpha(alpha);
        if (functional == "shift") return cgt::counterexample_shift(shift_k);
        if (functional == "product") return cgt::counterexample_product();
        throw cgt::input_error(
            "--functional must be shapley, additive, alpha, shift or product");
    }();

    const auto reports = cgt::check_all_properties(fn, spec);
    std::string csv = "property,name,verdict,instances,witness\n";
    json results = json::array();
    for (const auto& r : reports) {
        const std::string verdict = r.pass ? "PASS" : "FAIL";
        csv += cgt::property_code(r.id) + "," + cgt::property_name(r.id) + "," + verdict + "," +
               std::to_string(r.instances) + "," +
               cgt::csv_field(r.witness ? r.witness->note : "") + "\n";
        json item{{"property", cgt::property_code(r.id)},
                  {"name", cgt::property_name(r.id)},
                  {"verdict", verdict},
                  {"instances", r.instances},
                  {"tolerance", r.tolerance}};
        if (r.witness) item["witness"] = witness_json(*r.witness);
        results.push_back(std::move(item));
    }
    emit(o, manifest, csv, json{{"functional", fn.id}, {"results", std::move(results)}});
    return 0;
}

std::string quote_arg(const std::string& arg) {
    if (arg.find_first_of(" \t\"") == std::string::npos) return arg;
    std::string out = "\"";
    for (char ch : arg) {
        if (ch == '"') out += "\\\"";
        else out += ch;
    }
    return out + "\"";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cooperative game analysis: exact and sampled group values over TU games"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto* value_cmd = app.add_subcommand("value", "individual values of every player");
    add_input_options(value_cmd, opts);

    auto* group_cmd = app.add_subcommand("group-value", "value of one group acting as a unit");
    std::string group_csv;
    bool explain = false;
    group_cmd->add_option("--group", group_csv, "comma-separated player labels")->required();
    group_cmd->add_flag("--explain", explain,
                        "per-member marginal contributions in greedy order");
    add_input_options(group_cmd, opts);

    auto* rank_cmd = app.add_subcommand("rank", "best groups of a given size");
    int rank_size = 1;
    int rank_top = 10;
    std::string rank_method = "exact";
    rank_cmd->add_option("--size", rank_size, "group size")->required();
    rank_cmd->add_option("--top", rank_top, "rows to keep");
    rank_cmd->add_option("--method", rank_method, "exact | mc")
        ->check(CLI::IsMember({"exact", "mc"}));
    add_input_options(rank_cmd, opts);

    auto* comp_cmd = app.add_subcommand("complementarity", "average complementarity of a pair");
    std::string pair_csv;
    comp_cmd->add_option("--pair", pair_csv, "two comma-separated player labels")->required();
    add_input_options(comp_cmd, opts);

    auto* profit_cmd =
        app.add_subcommand("profitability", "group value against the additive baseline");
    std::string profit_group;
    profit_cmd->add_option("--group", profit_group, "comma-separated player labels")->required();
    add_input_options(profit_cmd, opts);

    auto* axioms_cmd = app.add_subcommand("axioms", "run the group-value axiom suites");
    std::string functional = "shapley";
    double alpha = 0.5;
    double shift_k = 1.0;
    std::string suite_path;
    cgt::SuiteSpec spec;
    axioms_cmd->add_option("--functional", functional,
                           "shapley | additive | alpha | shift | product");
    axioms_cmd->add_option("--alpha", alpha, "parameter of the alpha functional");
    axioms_cmd->add_option("--shift-k", shift_k, "parameter of the shift functional");
    axioms_cmd->add_option("--suite", suite_path,
                           "suite spec JSON: {\"n_range\":[3,8],\"games_per_n\":100,...}");
    axioms_cmd->add_option("--n-min", spec.n_min, "smallest player count");
    axioms_cmd->add_option("--n-max", spec.n_max, "largest player count");
    axioms_cmd->add_option("--games", spec.games_per_n, "random games per player count");
    axioms_cmd->add_option("--tolerance", spec.tolerance, "comparison tolerance");
    add_input_options(axioms_cmd, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    g_start = std::chrono::steady_clock::now();
    try {
        for (const CLI::Option* so : g_seed_options)
            if (so->count() > 0) opts.seed_given = true;
        resolve_seed(opts);
        cgt::RunManifest manifest;
        for (int i = 0; i < argc; ++i) {
            if (i) manifest.command += " ";
            manifest.command += quote_arg(argv[i]);
        }
        manifest.seed = opts.seed;

        int rc = 0;
        if (value_cmd->parsed()) rc = run_value(opts, manifest);
        else if (group_cmd->parsed()) rc = run_group_value(opts, group_csv, explain, manifest);
        else if (rank_cmd->parsed()) rc = run_rank(opts, rank_size, rank_top, rank_method, manifest);
        else if (comp_cmd->parsed()) rc = run_complementarity(opts, pair_csv, manifest);
        else if (profit_cmd->parsed()) rc = run_profitability(opts, profit_group, manifest);
        else if (axioms_cmd->parsed())
            rc = run_axioms(opts, functional, alpha, shift_k, suite_path, spec, manifest);
        return rc;
    } catch (const cgt::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cgt::capacity_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
