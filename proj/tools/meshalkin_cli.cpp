#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "meshalkin/checks.hpp"
#include "meshalkin/extremal.hpp"
#include "meshalkin/family_json.hpp"

using namespace meshalkin;

namespace {

constexpr long kDefaultBudget = 1'000'000;
constexpr std::uint64_t kDefaultSeed = 20250810;

long default_node_budget() {
    if (const char* env = std::getenv("MESHALKIN_BUDGET")) {
        char* end = nullptr;
        long value = std::strtol(env, &end, 10);
        if (end && *end == '\0' && value > 0) return value;
        throw std::runtime_error("MESHALKIN_BUDGET is not a positive integer");
    }
    return kDefaultBudget;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return doc;
}

std::vector<int> parse_alpha(const std::string& text) {
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            parts.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw std::runtime_error("cannot parse rank vector entry '" + item +
                                     "'");
        }
    }
    if (parts.empty()) throw std::runtime_error("empty rank vector");
    return parts;
}

std::string matrix_csv(const Flat& flat) {
    std::string out;
    for (std::size_t r = 0; r < flat.rows.size(); ++r) {
        if (r) out += ";";
        for (std::size_t c = 0; c < flat.rows[r].size(); ++c) {
            if (c) out += " ";
            out += std::to_string(flat.rows[r][c]);
        }
    }
    return out;
}

SequenceMode parse_sequence_mode(const std::string& mode) {
    if (mode == "full") return SequenceMode::full;
    if (mode == "partial") return SequenceMode::partial;
    throw std::runtime_error("mode must be full or partial, got '" + mode + "'");
}

struct Report {
    explicit Report(std::string command)
        : start_(std::chrono::steady_clock::now()) {
        doc_["command"] = std::move(command);
        doc_["parameters"] = Json::object();
        doc_["results"] = Json::object();
    }

    Json& parameters() { return doc_["parameters"]; }
    Json& results() { return doc_["results"]; }

    void add(Check check) { checks_.push_back(std::move(check)); }
    void add(std::vector<Check> checks) {
        for (auto& c : checks) checks_.push_back(std::move(c));
    }
    void warnings(const std::vector<std::string>& warnings) {
        if (warnings.empty()) return;
        Json arr = Json::array();
        for (const auto& w : warnings) arr.push_back(w);
        doc_["warnings"] = std::move(arr);
    }

    int finish() {
        Json arr = Json::array();
        bool failed = false;
        for (const Check& c : checks_) {
            Json entry;
            entry["name"] = c.name;
            entry["status"] = to_string(c.status);
            entry["details"] = c.details;
            arr.push_back(std::move(entry));
            failed = failed || c.status == CheckStatus::fail;
        }
        doc_["checks"] = std::move(arr);
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start_);
        doc_["elapsed_ms"] = elapsed.count();
        std::cout << doc_.dump(2) << "\n";
        return failed ? 1 : 0;
    }

private:
    Json doc_;
    std::vector<Check> checks_;
    std::chrono::steady_clock::time_point start_;
};

// ---------------------------------------------------------------- gauss --

int run_gauss(int n, const std::string& spec, int q) {
    Report report("gauss");
    report.parameters() = {{"n", n}, {"spec", spec}, {"q", q}};
    if (spec.find(',') == std::string::npos) {
        int k = std::stoi(spec);
        report.parameters()["k"] = k;
        report.results()["value"] = gaussian_binomial(n, k, q).get_str();
    } else {
        RankVector alpha(parse_alpha(spec));
        Json ja = Json::array();
        for (int a : alpha.parts()) ja.push_back(a);
        report.parameters()["alpha"] = std::move(ja);
        report.results()["value"] = gaussian_multinomial(n, alpha, q).get_str();
        report.results()["weight_exponent"] = pair_product_sum(alpha);
        report.results()["weighted_count"] =
            weighted_count(n, alpha, q).get_str();
    }
    return report.finish();
}

// ---------------------------------------------------------------- flats --

int run_flats(int n, int q, std::optional<int> rank, bool count_only,
              const std::string& format) {
    Lattice lattice(n, q);
    if (format == "csv") {
        if (!rank) throw std::runtime_error("csv output needs --rank");
        std::cout << "index,rank,matrix\n";
        const auto& level = lattice.level(*rank);
        for (std::size_t i = 0; i < level.size(); ++i) {
            std::cout << i << "," << *rank << "," << matrix_csv(level[i]) << "\n";
        }
        return 0;
    }
    Report report("flats");
    report.parameters() = {{"n", n}, {"q", q}};
    if (rank) {
        report.parameters()["rank"] = *rank;
        const auto& level = lattice.level(*rank);
        report.results()["count"] = std::to_string(level.size());
        report.results()["expected"] = lattice.level_count(*rank).get_str();
        if (!count_only) {
            Json arr = Json::array();
            for (const Flat& f : level) arr.push_back(flat_matrix_json(f));
            report.results()["flats"] = std::move(arr);
        }
        Check check{"level-count", CheckStatus::pass, {}};
        check.details["rank"] = *rank;
        check.details["count"] = std::to_string(level.size());
        check.details["expected"] = lattice.level_count(*rank).get_str();
        if (ExactInt(static_cast<long>(level.size())) !=
            lattice.level_count(*rank)) {
            check.status = CheckStatus::fail;
        }
        report.add(check);
    } else {
        report.add(verify_level_counts(lattice));
    }
    return report.finish();
}

// ---------------------------------------------------------- complements --

int run_complements(const std::string& flat_file, std::optional<int> n,
                    std::optional<int> q, const std::string& format) {
    Json doc = read_json_file(flat_file);
    auto [doc_n, doc_q] = flat_doc_geometry(doc);
    if ((n && *n != doc_n) || (q && *q != doc_q)) {
        throw std::runtime_error("--n/--q do not match the flat document");
    }
    Lattice lattice(doc_n, doc_q);
    std::vector<std::string> warnings;
    Flat flat = flat_from_doc(doc, lattice, &warnings);
    std::vector<Flat> comps = complements(lattice, flat);
    ExactInt expected =
        int_pow(doc_q, static_cast<unsigned long>(flat.rank()) *
                           static_cast<unsigned long>(doc_n - flat.rank()));

    if (format == "csv") {
        std::cout << "index,rank,matrix\n";
        for (std::size_t i = 0; i < comps.size(); ++i) {
            std::cout << i << "," << comps[i].rank() << ","
                      << matrix_csv(comps[i]) << "\n";
        }
        return 0;
    }

    Report report("complements");
    report.parameters() = {{"n", doc_n}, {"q", doc_q}, {"flat-file", flat_file}};
    report.warnings(warnings);
    report.results()["flat"] = flat_matrix_json(flat);
    report.results()["rank"] = flat.rank();
    report.results()["count"] = std::to_string(comps.size());
    report.results()["expected"] = expected.get_str();
    Json arr = Json::array();
    for (const Flat& c : comps) arr.push_back(flat_matrix_json(c));
    report.results()["complements"] = std::move(arr);

    Check check{"complement-count", CheckStatus::pass, {}};
    check.details["count"] = std::to_string(comps.size());
    check.details["expected"] = expected.get_str();
    if (ExactInt(static_cast<long>(comps.size())) != expected) {
        check.status = CheckStatus::fail;
        check.details["counterexample"] = flat_matrix_json(flat);
    }
    report.add(check);
    return report.finish();
}

// ----------------------------------------------------------------- mesh --

int run_mesh(bool enumerate, int n, int q, int p, const std::string& alpha_text,
             const std::string& mode_text, const std::string& format) {
    Lattice lattice(n, q);
    RankVector alpha(parse_alpha(alpha_text));
    SequenceMode mode = parse_sequence_mode(mode_text);
    auto sequences = enumerate_sequences(lattice, p, alpha, mode);
    ExactInt expected = sequence_count_formula(lattice, alpha, mode);

    if (enumerate && format == "csv") {
        std::cout << "index";
        for (int k = 1; k <= p; ++k) std::cout << ",flat" << k;
        std::cout << "\n";
        for (std::size_t i = 0; i < sequences.size(); ++i) {
            std::cout << i;
            for (const Flat& f : sequences[i].flats) {
                std::cout << "," << matrix_csv(f);
            }
            std::cout << "\n";
        }
        return 0;
    }

    Report report(enumerate ? "mesh enum" : "mesh count");
    report.parameters() = {{"n", n},
                           {"q", q},
                           {"p", p},
                           {"alpha", alpha_text},
                           {"mode", mode_text}};
    report.results()["count"] = std::to_string(sequences.size());
    report.results()["expected"] = expected.get_str();
    if (enumerate) {
        Json arr = Json::array();
        for (const auto& s : sequences) {
            Json entry = Json::array();
            for (const Flat& f : s.flats) entry.push_back(flat_matrix_json(f));
            arr.push_back(std::move(entry));
        }
        report.results()["sequences"] = std::move(arr);
    }
    Check check{"sequence-count", CheckStatus::pass, {}};
    check.details["count"] = std::to_string(sequences.size());
    check.details["expected"] = expected.get_str();
    if (ExactInt(static_cast<long>(sequences.size())) != expected) {
        check.status = CheckStatus::fail;
    }
    report.add(check);
    return report.finish();
}

// ------------------------------------------------------------------ lym --

int run_lym(const std::string& family_file, const std::string& mode_text,
            int l) {
    Json doc = read_json_file(family_file);
    FamilyDocInfo info = family_doc_info(doc);
    Lattice lattice(info.n, info.q);
    FamilyLoadResult loaded = family_from_json(doc, lattice);

    LymMode mode;
    if (mode_text == "main") {
        mode = LymMode::main;
    } else if (mode_text == "weak") {
        mode = LymMode::weak;
    } else if (mode_text == "partial") {
        mode = LymMode::partial;
    } else {
        throw std::runtime_error("mode must be main, weak or partial");
    }

    ChainScope scope =
        mode == LymMode::partial ? ChainScope::partial : ChainScope::full;
    ChainCheck chain = check_chain_condition(lattice, loaded.family, l, scope);
    ExactRat sum = lym_sum(lattice, loaded.family, mode);

    ProblemParams params{info.n, info.p, l, info.q};
    ExactRat limit;
    std::string limit_label;
    if (mode == LymMode::main) {
        limit = ExactRat(int_pow(l, static_cast<unsigned long>(info.p - 1)));
        limit_label = "l^(p-1)";
    } else if (mode == LymMode::weak) {
        limit = ExactRat(bound(params, BoundMode::weak).value);
        limit_label = "weak bound";
    } else {
        limit = ExactRat(int_pow(l, static_cast<unsigned long>(info.p)));
        limit_label = "l^p";
    }

    Report report("lym");
    report.parameters() = {{"family-file", family_file},
                           {"mode", mode_text},
                           {"l", l}};
    report.warnings(loaded.warnings);
    report.results()["size"] = std::to_string(loaded.family.size());
    report.results()["sum"] = rational_json(sum);
    report.results()["limit"] = rational_json(limit);
    report.results()["limit_kind"] = limit_label;
    report.results()["chain_condition_holds"] = chain.ok;
    if (!chain.ok) {
        report.results()["chain_violation"] = {
            {"coordinate", chain.coordinate},
            {"chain_length", chain.chain_length}};
    }

    Check check{"lym-bound", CheckStatus::pass, {}};
    check.details["sum"] = rational_json(sum);
    check.details["limit"] = rational_json(limit);
    if (!chain.ok) {
        // The inequality is not claimed without the chain hypothesis.
        check.status = CheckStatus::report;
        check.details["note"] = "chain condition fails at coordinate " +
                                std::to_string(chain.coordinate);
    } else if (sum > limit) {
        check.status = CheckStatus::fail;
        check.details["family"] = family_to_json(loaded.family, lattice);
    }
    report.add(check);
    return report.finish();
}

// ---------------------------------------------------------------- bound --

int run_bound(int n, int p, int l, int q, const std::string& mode_text) {
    BoundMode mode;
    if (mode_text == "main") {
        mode = BoundMode::main;
    } else if (mode_text == "partial") {
        mode = BoundMode::partial;
    } else if (mode_text == "rota-harper") {
        mode = BoundMode::rota_harper;
    } else if (mode_text == "weak") {
        mode = BoundMode::weak;
    } else {
        throw std::runtime_error("mode must be main, partial, rota-harper or weak");
    }
    ProblemParams params{n, p, l, q};
    BoundResult result = bound(params, mode);
    Report report("bound");
    report.parameters() = {
        {"n", n}, {"p", p}, {"l", l}, {"q", q}, {"mode", mode_text}};
    report.results()["value"] = result.value.get_str();
    Json alphas = Json::array();
    for (const RankVector& a : result.alphas) {
        Json ja = Json::array();
        for (int x : a.parts()) ja.push_back(x);
        alphas.push_back(std::move(ja));
    }
    report.results()["alphas"] = std::move(alphas);
    return report.finish();
}

// --------------------------------------------------------------- search --

const char* verdict_string(ConjectureVerdict v) {
    switch (v) {
    case ConjectureVerdict::confirmed:
        return "CONFIRMED";
    case ConjectureVerdict::counterexample:
        return "COUNTEREXAMPLE";
    case ConjectureVerdict::not_applicable:
        return "NOT_APPLICABLE";
    }
    return "UNKNOWN";
}

int run_search(const std::string& kind, int n, int q, int p, int l,
               const std::string& mode_text, long budget) {
    SequenceMode mode = parse_sequence_mode(mode_text);
    Lattice lattice(n, q);
    SearchConfig config;
    config.params = ProblemParams{n, p, l, q};
    config.mode = mode;
    config.node_budget = budget;

    Report report("search " + kind);
    report.parameters() = {{"n", n},     {"q", q},
                           {"p", p},     {"l", l},
                           {"mode", mode_text}, {"budget", budget}};

    if (kind == "max") {
        SearchResult result = search_max_family(config, lattice);
        report.results()["max_size"] = result.max_size.get_str();
        report.results()["bound"] = result.bound_value.get_str();
        report.results()["gap"] = result.gap.get_str();
        report.results()["exhausted"] = result.exhausted;
        report.results()["nodes"] = result.nodes;
        Json witnesses = Json::array();
        for (const Family& f : result.witnesses) {
            witnesses.push_back(family_to_json(f, lattice));
        }
        report.results()["witnesses"] = std::move(witnesses);

        Check check{"max-within-bound", CheckStatus::pass, {}};
        check.details["max_size"] = result.max_size.get_str();
        check.details["bound"] = result.bound_value.get_str();
        if (result.max_size > result.bound_value) {
            check.status = CheckStatus::fail;
            check.details["witness"] =
                result.witnesses.empty()
                    ? Json()
                    : family_to_json(result.witnesses.front(), lattice);
        }
        report.add(check);
        if (!result.exhausted) {
            Check note{"search-exhausted", CheckStatus::report, {}};
            note.details["note"] = "node budget reached; max_size is a lower bound";
            report.add(note);
        }
    } else if (kind == "unique") {
        config.report_all_maxima = true;
        UniquenessReport result = check_uniqueness(config, lattice);
        report.results()["max_size"] = result.enumeration.max_size.get_str();
        report.results()["maxima"] = Json::array();
        for (const Family& f : result.enumeration.maxima) {
            report.results()["maxima"].push_back(family_to_json(f, lattice));
        }
        report.results()["candidates"] = Json::array();
        for (const Family& f : result.candidates) {
            report.results()["candidates"].push_back(family_to_json(f, lattice));
        }
        report.results()["exhausted"] = result.enumeration.exhausted;
        report.results()["nodes"] = result.enumeration.nodes;
        report.results()["verdict"] = verdict_string(result.verdict);
        report.results()["reason"] = result.reason;

        Check check{"uniqueness", CheckStatus::report, {}};
        check.details["verdict"] = verdict_string(result.verdict);
        check.details["reason"] = result.reason;
        check.details["maxima"] =
            static_cast<long>(result.enumeration.maxima.size());
        check.details["candidates"] = static_cast<long>(result.candidates.size());
        if (result.verdict == ConjectureVerdict::confirmed) {
            check.status = CheckStatus::pass;
        }
        report.add(check);
    } else {
        throw std::runtime_error("search kind must be max or unique");
    }
    return report.finish();
}

// ----------------------------------------------------------------- lift --

int run_lift(const std::string& antichain_file) {
    Json doc = read_json_file(antichain_file);
    auto [n, q] = flat_doc_geometry(doc);
    Lattice lattice(n, q);
    std::vector<std::string> warnings;
    std::vector<Flat> flats = flats_from_doc(doc, lattice, &warnings);
    std::set<Flat> distinct(flats.begin(), flats.end());
    std::vector<Flat> source(distinct.begin(), distinct.end());

    Family lifted = rota_harper_lift(lattice, source);
    ExactRat sum = lym_sum(lattice, lifted, LymMode::main);
    ExactRat expected(0);
    ExactInt expected_size(0);
    for (const Flat& a : source) {
        expected += reciprocal(gaussian_binomial(n, a.rank(), q));
        expected_size += int_pow(
            q, static_cast<unsigned long>(a.rank()) *
                   static_cast<unsigned long>(n - a.rank()));
    }

    Report report("lift");
    report.parameters() = {{"antichain-file", antichain_file}};
    report.warnings(warnings);
    report.results()["source_flats"] = static_cast<long>(source.size());
    report.results()["family_size"] = std::to_string(lifted.size());
    report.results()["expected_size"] = expected_size.get_str();
    report.results()["sum"] = rational_json(sum);
    report.results()["expected_sum"] = rational_json(expected);
    report.results()["family"] = family_to_json(lifted, lattice);

    Check size_check{"lift-size", CheckStatus::pass, {}};
    size_check.details["size"] = std::to_string(lifted.size());
    size_check.details["expected"] = expected_size.get_str();
    if (ExactInt(lifted.size()) != expected_size) {
        size_check.status = CheckStatus::fail;
    }
    report.add(size_check);

    Check identity{"lift-lym-identity", CheckStatus::pass, {}};
    identity.details["sum"] = rational_json(sum);
    identity.details["expected"] = rational_json(expected);
    if (sum != expected) identity.status = CheckStatus::fail;
    report.add(identity);
    return report.finish();
}

// --------------------------------------------------------------- verify --

struct VerifyOptions {
    std::optional<int> n, q, p, l;
    std::optional<int> families;
    std::uint64_t seed = kDefaultSeed;
    long budget = 0;
};

struct BoundsConfig {
    int n, q, p, l;
};

std::vector<BoundsConfig> bounds_grid(const VerifyOptions& opt) {
    std::vector<BoundsConfig> grid;
    for (int n : {3, 4}) {
        for (int q : {2}) {
            for (int p : {2, 3}) {
                for (int l : {1, 2}) {
                    grid.push_back({n, q, p, l});
                }
            }
        }
    }
    std::erase_if(grid, [&](const BoundsConfig& c) {
        return (opt.n && c.n != *opt.n) || (opt.q && c.q != *opt.q) ||
               (opt.p && c.p != *opt.p) || (opt.l && c.l != *opt.l);
    });
    if (grid.empty() && opt.n && opt.q) {
        grid.push_back({*opt.n, *opt.q, opt.p.value_or(2), opt.l.value_or(1)});
    }
    return grid;
}

int run_verify(const std::string& name, const VerifyOptions& opt) {
    Report report("verify " + name);
    report.parameters()["name"] = name;
    if (opt.n) report.parameters()["n"] = *opt.n;
    if (opt.q) report.parameters()["q"] = *opt.q;
    if (opt.p) report.parameters()["p"] = *opt.p;
    if (opt.l) report.parameters()["l"] = *opt.l;
    report.parameters()["seed"] = opt.seed;

    auto geometry_grid = [&](int max_n, const std::vector<int>& qs) {
        std::vector<std::pair<int, int>> grid;
        for (int n = 0; n <= max_n; ++n) {
            for (int q : qs) {
                if ((opt.n && n != *opt.n) || (opt.q && q != *opt.q)) continue;
                grid.emplace_back(n, q);
            }
        }
        if (grid.empty() && opt.n && opt.q) grid.emplace_back(*opt.n, *opt.q);
        return grid;
    };

    if (name == "lemma-comp") {
        for (auto [n, q] : geometry_grid(4, {2, 3})) {
            Lattice lattice(n, q);
            report.add(verify_complement_counts(lattice));
        }
    } else if (name == "lemma-meshcount") {
        std::vector<std::tuple<int, int, int>> grid;
        for (int n = 0; n <= 4; ++n) {
            for (int p : {2, 3}) grid.emplace_back(n, 2, p);
        }
        for (int n = 0; n <= 3; ++n) grid.emplace_back(n, 3, 2);
        std::erase_if(grid, [&](const auto& c) {
            return (opt.n && std::get<0>(c) != *opt.n) ||
                   (opt.q && std::get<1>(c) != *opt.q) ||
                   (opt.p && std::get<2>(c) != *opt.p);
        });
        if (grid.empty() && opt.n && opt.q) {
            grid.emplace_back(*opt.n, *opt.q, opt.p.value_or(2));
        }
        for (auto [n, q, p] : grid) {
            Lattice lattice(n, q);
            report.add(verify_sequence_counts(lattice, p));
        }
    } else if (name == "thm-main" || name == "prop-weak" ||
               name == "cor-partial") {
        auto grid = bounds_grid(opt);
        int total_default = name == "thm-main" ? 1000 : 500;
        int per_config =
            opt.families.value_or(static_cast<int>(
                (total_default + grid.size() - 1) / std::max<std::size_t>(grid.size(), 1)));
        std::set<std::tuple<int, int, int>> antichain_done;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const BoundsConfig& c = grid[i];
            Lattice lattice(c.n, c.q);
            std::uint64_t seed = opt.seed + i;
            if (name == "thm-main") {
                report.add(
                    verify_main_bounds(lattice, c.p, c.l, per_config, seed));
            } else if (name == "prop-weak") {
                report.add(
                    verify_weak_bounds(lattice, c.p, c.l, per_config, seed));
            } else {
                report.add(
                    verify_partial_bounds(lattice, c.p, c.l, per_config, seed));
                if (antichain_done.insert({c.n, c.q, c.p}).second) {
                    report.add(verify_partial_antichain(
                        lattice, c.p,
                        opt.budget > 0 ? opt.budget : default_node_budget()));
                }
            }
        }
    } else if (name == "thm-rh") {
        for (auto [n, q] : geometry_grid(4, {2, 3})) {
            Lattice lattice(n, q);
            report.add(verify_rh_construction(lattice));
        }
    } else {
        throw std::runtime_error(
            "unknown verify target '" + name +
            "' (expected lemma-comp, lemma-meshcount, thm-main, prop-weak, "
            "cor-partial or thm-rh)");
    }
    return report.finish();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Meshalkin-sequence computations over PG(n-1,q)"};
    app.require_subcommand(1);

    try {
        // gauss
        auto* gauss = app.add_subcommand(
            "gauss", "Gaussian binomial/multinomial coefficients");
        int gauss_n = 0;
        std::string gauss_spec;
        int gauss_q = 0;
        gauss->add_option("n", gauss_n, "ambient rank")->required();
        gauss
            ->add_option("k", gauss_spec,
                         "lower index, or comma-separated composition")
            ->required();
        gauss->add_option("--q", gauss_q, "field order")->required();

        // flats
        auto* flats = app.add_subcommand("flats", "enumerate or count flats");
        int flats_n = 0, flats_q = 0;
        int flats_rank = -1;
        bool flats_count_only = false;
        std::string flats_format = "json";
        flats->add_option("--n", flats_n, "geometry rank")->required();
        flats->add_option("--q", flats_q, "field order")->required();
        flats->add_option("--rank", flats_rank, "flat rank to enumerate");
        flats->add_flag("--count-only", flats_count_only, "omit the flat list");
        flats->add_option("--format", flats_format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));

        // complements
        auto* comp = app.add_subcommand("complements",
                                        "complements of a flat, with count check");
        std::string comp_file;
        int comp_n = -1, comp_q = -1;
        std::string comp_format = "json";
        comp->add_option("--flat-file", comp_file, "flat document")->required();
        comp->add_option("--n", comp_n, "expected geometry rank");
        comp->add_option("--q", comp_q, "expected field order");
        comp->add_option("--format", comp_format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));

        // mesh
        auto* mesh = app.add_subcommand("mesh", "Meshalkin sequences");
        mesh->require_subcommand(1);
        int mesh_n = 0, mesh_q = 0, mesh_p = 0;
        std::string mesh_alpha, mesh_mode = "full", mesh_format = "json";
        for (const char* sub : {"count", "enum"}) {
            auto* cmd = mesh->add_subcommand(
                sub, std::string(sub) == "count" ? "count sequences"
                                                 : "list sequences");
            cmd->add_option("--n", mesh_n, "geometry rank")->required();
            cmd->add_option("--q", mesh_q, "field order")->required();
            cmd->add_option("--p", mesh_p, "sequence length")->required();
            cmd->add_option("--alpha", mesh_alpha, "rank vector, comma separated")
                ->required();
            cmd->add_option("--mode", mesh_mode, "full or partial")
                ->check(CLI::IsMember({"full", "partial"}));
            cmd->add_option("--format", mesh_format, "json or csv")
                ->check(CLI::IsMember({"json", "csv"}));
        }

        // lym
        auto* lym = app.add_subcommand("lym", "exact LYM sum of a family");
        std::string lym_file, lym_mode;
        int lym_l = 1;
        lym->add_option("--family-file", lym_file, "family document")->required();
        lym->add_option("--mode", lym_mode, "main, weak or partial")->required();
        lym->add_option("--l", lym_l, "chain parameter for the comparison");

        // bound
        auto* bnd = app.add_subcommand("bound", "extremal size bounds");
        int bnd_n = 0, bnd_p = 0, bnd_l = 0, bnd_q = 0;
        std::string bnd_mode;
        bnd->add_option("--n", bnd_n, "geometry rank")->required();
        bnd->add_option("--p", bnd_p, "sequence length")->required();
        bnd->add_option("--l", bnd_l, "chain parameter")->required();
        bnd->add_option("--q", bnd_q, "field order")->required();
        bnd->add_option("--mode", bnd_mode, "main, partial, rota-harper or weak")
            ->required();

        // verify
        auto* verify = app.add_subcommand("verify", "run a verification suite");
        std::string verify_name;
        VerifyOptions vopt;
        int vn = -1, vq = -1, vp = -1, vl = -1, vfam = -1;
        verify->add_option("name", verify_name, "suite name")->required();
        verify->add_option("--n", vn, "geometry rank");
        verify->add_option("--q", vq, "field order");
        verify->add_option("--p", vp, "sequence length");
        verify->add_option("--l", vl, "chain parameter");
        verify->add_option("--families", vfam, "families per configuration");
        verify->add_option("--seed", vopt.seed, "generator seed");
        verify->add_option("--budget", vopt.budget, "search node budget");

        // search
        auto* search = app.add_subcommand("search",
                                          "exhaustive extremal-family search");
        std::string search_kind;
        int search_n = 0, search_q = 0, search_p = 0, search_l = 0;
        std::string search_mode = "full";
        long search_budget = 0;
        search->add_option("kind", search_kind, "max or unique")->required();
        search->add_option("--n", search_n, "geometry rank")->required();
        search->add_option("--q", search_q, "field order")->required();
        search->add_option("--p", search_p, "sequence length")->required();
        search->add_option("--l", search_l, "chain parameter")->required();
        search->add_option("--mode", search_mode, "full or partial")
            ->check(CLI::IsMember({"full", "partial"}));
        search->add_option("--budget", search_budget, "node budget");

        // lift
        auto* lift = app.add_subcommand(
            "lift", "complement lift of a set of flats");
        std::string lift_file;
        lift->add_option("--antichain-file", lift_file, "flat list document")
            ->required();

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            int code = app.exit(e);
            return code == 0 ? 0 : 2; // usage errors exit 2, help exits 0
        }

        if (gauss->parsed()) return run_gauss(gauss_n, gauss_spec, gauss_q);
        if (flats->parsed()) {
            return run_flats(flats_n, flats_q,
                             flats_rank >= 0 ? std::optional<int>(flats_rank)
                                             : std::nullopt,
                             flats_count_only, flats_format);
        }
        if (comp->parsed()) {
            return run_complements(
                comp_file, comp_n >= 0 ? std::optional<int>(comp_n) : std::nullopt,
                comp_q >= 0 ? std::optional<int>(comp_q) : std::nullopt,
                comp_format);
        }
        if (mesh->parsed()) {
            bool enumerate = mesh->get_subcommand("enum")->parsed();
            return run_mesh(enumerate, mesh_n, mesh_q, mesh_p, mesh_alpha,
                            mesh_mode, mesh_format);
        }
        if (lym->parsed()) return run_lym(lym_file, lym_mode, lym_l);
        if (bnd->parsed()) return run_bound(bnd_n, bnd_p, bnd_l, bnd_q, bnd_mode);
        if (verify->parsed()) {
            if (vn >= 0) vopt.n = vn;
            if (vq >= 0) vopt.q = vq;
            if (vp >= 0) vopt.p = vp;
            if (vl >= 0) vopt.l = vl;
            if (vfam >= 0) vopt.families = vfam;
            return run_verify(verify_name, vopt);
        }
        if (search->parsed()) {
            long budget =
                search_budget > 0 ? search_budget : default_node_budget();
            return run_search(search_kind, search_n, search_q, search_p,
                              search_l, search_mode, budget);
        }
        if (lift->parsed()) return run_lift(lift_file);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
