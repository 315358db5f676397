// adlv: command-line front end for the affine Deligne-Lusztig toolkit.
#include "adlv/acceptance.hpp"
#include "adlv/workspace.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <condition_variable>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

namespace {

using adlv::AffineElement;
using adlv::Workspace;
using nlohmann::json;

enum ExitCode { kOk = 0, kUsage = 1, kComputation = 2, kInvariant = 3 };

struct Common {
    std::string datum;
    std::string format = "json";
    bool pretty = false;
};

struct Emitter {
    const Common& common;
    void operator()(const json& j) const { std::cout << (common.pretty ? j.dump(2) : j.dump()) << '\n'; }
};

std::shared_ptr<Workspace> open_datum(const Common& common) {
    return Workspace::load(common.datum, adlv::slack_from_environment());
}

std::string word_text(const adlv::WeylGroup& W, adlv::WeylElement w) {
    std::string out = "[";
    const auto& letters = W.reduced_word(w);
    for (std::size_t k = 0; k < letters.size(); ++k) out += (k ? "," : "") + std::to_string(letters[k] + 1);
    return out + "]";
}

json class_polynomials_json(const Workspace& ws, const std::map<adlv::ClassKey, adlv::Polynomial>& polys) {
    json out = json::array();
    for (const auto& [key, f] : polys)
        out.push_back({{"class", ws.reduction().key_json(key)}, {"coefficients", f.coeffs()}, {"polynomial", f.format()}});
    return out;
}

json bgx_json(const Workspace& ws, const std::map<adlv::BGClass, std::vector<adlv::PathStatistic>>& bgx) {
    json out = json::array();
    for (const auto& [b, stats] : bgx) {
        json paths = json::array();
        std::int64_t dim = stats.front().dimension;
        for (const auto& s : stats) {
            dim = std::max(dim, s.dimension);
            paths.push_back({{"endpoint", ws.affine().to_json(s.endpoint)},
                             {"type_I", s.type_one},
                             {"type_II", s.type_two},
                             {"endpoint_length", s.endpoint_length},
                             {"dimension", s.dimension}});
        }
        out.push_back({{"class", ws.invariants().to_json(b)}, {"dimension", dim}, {"paths", paths}});
    }
    return out;
}

adlv::BGClass parse_class(const Workspace& ws, const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed class JSON: ") + e.what());
    }
    return ws.invariants().from_json(j);
}

// Scan: per-element reports computed by a worker pool, printed in input order.
int run_scan(const Common& common, int max_length, int min_length, unsigned jobs, std::optional<std::uint64_t> seed) {
    auto ws = open_datum(common);
    std::vector<AffineElement> elements;
    for (const auto& x : adlv::scan_elements(*ws, max_length))
        if (ws->affine().length(x) >= min_length) elements.push_back(x);

    std::vector<std::optional<std::string>> lines(elements.size());
    std::mutex mutex;
    std::condition_variable ready;
    std::size_t next = 0;
    std::exception_ptr failure;

    auto work = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard lock(mutex);
                if (next >= elements.size() || failure) return;
                i = next++;
            }
            std::string line;
            try {
                auto report = adlv::analyze_element(*ws, elements[i]);
                json j = adlv::element_report_json(*ws, report);
                if (seed) {
                    const auto& R = ws->reduction();
                    bool agrees = R.class_polynomials(R.build_tree(elements[i], adlv::TreePolicy::seeded(*seed))) ==
                                  R.class_polynomials(elements[i]);
                    j["seeded_tree_agrees"] = agrees;
                }
                if (common.format == "table") {
                    std::ostringstream row;
                    row << ws->affine().format(elements[i]) << '\t' << report.length << '\t'
                        << (report.positive_coxeter ? "pct" : "-") << '\t' << (report.consistent() ? "ok" : "MISMATCH");
                    line = row.str();
                } else {
                    line = common.pretty ? j.dump(2) : j.dump();
                }
            } catch (...) {
                std::lock_guard lock(mutex);
                failure = std::current_exception();
                ready.notify_all();
                return;
            }
            std::lock_guard lock(mutex);
            lines[i] = std::move(line);
            ready.notify_all();
        }
    };

    jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, elements.size()))));
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);

    bool all_consistent = true;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::unique_lock lock(mutex);
        ready.wait(lock, [&] { return lines[i].has_value() || failure; });
        if (failure) break;
        const std::string line = std::move(*lines[i]);
        lock.unlock();
        if (line.find("MISMATCH") != std::string::npos || line.find("\"consistent\":false") != std::string::npos ||
            line.find("\"consistent\": false") != std::string::npos)
            all_consistent = false;
        std::cout << line << '\n';
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
    std::cout.flush();
    if (!all_consistent) {
        std::cerr << "scan: some elements are inconsistent\n";
        return kInvariant;
    }
    return kOk;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Affine Deligne-Lusztig varieties of positive Coxeter type"};
    app.require_subcommand(1);
    Common common;
    std::string x_text, class_text, from_text, to_text;
    std::optional<std::uint64_t> seed;
    int max_length = 4, min_length = 0, criterion = 0;
    unsigned jobs = std::max(1U, std::thread::hardware_concurrency());
    std::string data_dir;

    auto with_datum = [&](CLI::App* cmd) {
        cmd->add_option("--datum", common.datum, "root datum JSON file")->required()->check(CLI::ExistingFile);
        cmd->add_flag("--pretty", common.pretty, "indent JSON output");
        return cmd;
    };
    auto with_element = [&](CLI::App* cmd) {
        with_datum(cmd);
        cmd->add_option("--x", x_text, "element as {\"w\": [...], \"mu\": [...]}")->required();
        return cmd;
    };
    auto with_format = [&](CLI::App* cmd, std::vector<std::string> formats) {
        cmd->add_option("--format", common.format, "output format")->check(CLI::IsMember(formats));
        return cmd;
    };

    auto* datum_cmd = app.add_subcommand("datum", "root datum utilities");
    datum_cmd->require_subcommand(1);
    auto* validate = with_datum(datum_cmd->add_subcommand("validate", "check a datum and print its invariants"));

    auto* lp = with_format(with_element(app.add_subcommand("lp", "length-positive set LP(x)")), {"json", "table"});
    auto* eta = with_element(app.add_subcommand("eta", "eta_sigma(x)"));

    auto* qbg = app.add_subcommand("qbg", "quantum Bruhat graph");
    qbg->require_subcommand(1);
    auto* qdist = with_datum(qbg->add_subcommand("dist", "shortest path length"));
    auto* qweight = with_datum(qbg->add_subcommand("weight", "weight of shortest paths"));
    for (auto* cmd : {qdist, qweight}) {
        cmd->add_option("--from", from_text, "Weyl element as a word, e.g. [1,2]")->required();
        cmd->add_option("--to", to_text, "Weyl element as a word")->required();
    }
    auto* qdot = with_datum(qbg->add_subcommand("dot", "graph in DOT format"));

    auto* newton = with_element(app.add_subcommand("newton", "Newton point of x"));
    auto* kappa = with_element(app.add_subcommand("kappa", "Kottwitz point of x"));
    auto* lambda = with_datum(app.add_subcommand("lambda", "lambda invariant and defect of a class"));
    lambda->add_option("--x", x_text, "element whose class is used");
    lambda->add_option("--class", class_text, "class as {\"kappa\": [...], \"nu\": [...]}");
    auto* bgx = with_format(with_element(app.add_subcommand("bgx", "classes met by X_x(b) via the reduction tree")),
                            {"json", "table"});
    auto* tree = with_format(with_element(app.add_subcommand("tree", "reduction tree")), {"json", "dot"});
    tree->add_option("--seed", seed, "seeded tree policy");
    auto* classpoly = with_format(with_element(app.add_subcommand("classpoly", "class polynomials")), {"json", "table"});
    classpoly->add_option("--seed", seed, "seeded tree policy");

    auto* pct = app.add_subcommand("pct", "positive Coxeter type");
    pct->require_subcommand(1);
    auto* classify = with_element(pct->add_subcommand("classify", "positive Coxeter pairs and characterization"));
    auto* report = with_element(pct->add_subcommand("report", "B(G)_x with dimensions and path statistics"));
    auto* endpoint = with_element(pct->add_subcommand("endpoint", "endpoint classes of the reduction paths"));
    endpoint->add_option("--class", class_text, "restrict to one class");

    auto* scan = with_format(with_datum(app.add_subcommand("scan", "reports for all elements up to a length bound")),
                             {"json", "table"});
    scan->add_option("--max-length", max_length, "length bound")->check(CLI::NonNegativeNumber);
    scan->add_option("--min-length", min_length, "skip shorter elements")->check(CLI::NonNegativeNumber);
    scan->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    scan->add_option("--seed", seed, "also compare against a seeded tree");

    auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
    selftest->add_option("--criterion", criterion, "run one criterion")->check(CLI::Range(1, adlv::kCriterionCount));
    selftest->add_option("--data-dir", data_dir, "fixture directory")->check(CLI::ExistingDirectory);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    const Emitter emit{common};

    if (selftest->parsed()) {
        adlv::AcceptanceOptions options;
        options.data_dir = data_dir.empty() ? adlv::default_data_dir() : data_dir;
        std::vector<adlv::CriterionResult> results;
        if (criterion > 0)
            results.push_back(adlv::run_criterion(criterion, options));
        else
            results = adlv::run_acceptance(options);
        bool all = true;
        for (const auto& r : results) {
            std::cout << adlv::format_result(r) << '\n';
            all = all && r.pass;
        }
        return all ? kOk : kComputation;
    }
    if (scan->parsed()) return run_scan(common, max_length, min_length, jobs, seed);

    auto ws = open_datum(common);
    const auto& A = ws->affine();
    const auto& W = ws->weyl();
    auto element = [&] { return A.parse(x_text); };

    if (validate->parsed()) {
        const auto& d = ws->datum();
        auto quotient = [](const adlv::QuotientPresentation& q) {
            return json{{"free_rank", q.free_rank()}, {"torsion", adlv::integer_vector_json(q.torsion())}};
        };
        emit({{"name", d.name()},
              {"rank", d.rank()},
              {"dim", d.dim()},
              {"roots", d.num_roots()},
              {"weyl_order", W.order()},
              {"sigma_order", d.sigma_order()},
              {"pi1", quotient(d.pi1())},
              {"pi1_gamma", quotient(d.pi1_gamma())},
              {"length_zero_elements", A.omega_elements(1).size()},
              {"datum", d.to_json()}});
    } else if (lp->parsed()) {
        auto x = element();
        json words = json::array();
        for (auto v : A.lp_set(x)) words.push_back(word_text(W, v));
        if (common.format == "table") {
            for (const auto& w : words) std::cout << w.get<std::string>() << '\n';
        } else {
            emit({{"x", A.to_json(x)}, {"lp", words}});
        }
    } else if (eta->parsed()) {
        auto x = element();
        auto value = A.eta_sigma(x);
        emit({{"x", A.to_json(x)},
              {"eta", word_text(W, value)},
              {"dominance_witness", word_text(W, A.dominance_witness(x.mu))},
              {"partial_sigma_coxeter", W.is_partial_sigma_coxeter(value)}});
    } else if (qdist->parsed() || qweight->parsed()) {
        auto from = W.parse(from_text), to = W.parse(to_text);
        auto dw = ws->qbg().distance_weight(from, to);
        json j{{"from", word_text(W, from)}, {"to", word_text(W, to)}, {"distance", dw.distance}};
        if (qweight->parsed()) {
            j["weight"] = dw.weight;
            j["weight_in_lattice"] = ws->qbg().weight_in_lattice(dw.weight);
        }
        emit(j);
    } else if (qdot->parsed()) {
        std::cout << ws->qbg().to_dot();
    } else if (newton->parsed()) {
        auto x = element();
        auto data = ws->invariants().newton_data(x);
        emit({{"x", A.to_json(x)},
              {"raw", adlv::rational_vector_json(data.raw)},
              {"nu", adlv::rational_vector_json(data.dominant)},
              {"order", data.order},
              {"nu_by_power", adlv::rational_vector_json(ws->invariants().newton_by_power(x))}});
    } else if (kappa->parsed()) {
        auto x = element();
        emit({{"x", A.to_json(x)}, {"kappa", adlv::integer_vector_json(ws->invariants().kappa(x))}});
    } else if (lambda->parsed()) {
        if (x_text.empty() == class_text.empty()) throw std::invalid_argument("lambda: give exactly one of --x and --class");
        const auto& bg = ws->invariants();
        auto b = class_text.empty() ? bg.class_of(element()) : parse_class(*ws, class_text);
        auto inv = bg.lambda(b);
        emit({{"class", bg.to_json(b)},
              {"lambda", inv.representative},
              {"residue", adlv::integer_vector_json(inv.residue)},
              {"average", adlv::rational_vector_json(inv.average)},
              {"defect", bg.defect(b)},
              {"I_nu", adlv::format_index_set(bg.I_nu(b))},
              {"I_1", adlv::format_index_set(bg.I_one(b))}});
    } else if (bgx->parsed()) {
        auto x = element();
        auto data = ws->reduction().bgx(x);
        if (common.format == "table") {
            for (const auto& [b, stats] : data)
                for (const auto& s : stats)
                    std::cout << ws->invariants().format(b) << "\tI=" << s.type_one << "\tII=" << s.type_two
                              << "\tdim=" << s.dimension << '\n';
        } else {
            json out{{"x", A.to_json(x)}, {"classes", bgx_json(*ws, data)}};
            json vdims = json::array();
            for (const auto& [b, stats] : data)
                vdims.push_back({{"class", ws->invariants().to_json(b)}, {"virtual_dimension", ws->invariants().virtual_dimension(x, b)}});
            out["virtual_dimensions"] = vdims;
            emit(out);
        }
    } else if (tree->parsed() || classpoly->parsed()) {
        auto x = element();
        auto policy = seed ? adlv::TreePolicy::seeded(*seed) : adlv::TreePolicy::deterministic();
        auto t = ws->reduction().build_tree(x, policy);
        if (tree->parsed()) {
            if (common.format == "dot")
                std::cout << ws->reduction().tree_dot(t);
            else
                emit(ws->reduction().tree_json(t));
        } else {
            auto polys = ws->reduction().class_polynomials(t);
            if (common.format == "table") {
                for (const auto& [key, f] : polys) std::cout << A.format(key.representative) << '\t' << f.format() << '\n';
            } else {
                emit({{"x", A.to_json(x)}, {"classes", class_polynomials_json(*ws, polys)}});
            }
        }
    } else if (classify->parsed()) {
        auto x = element();
        const auto& P = ws->pct();
        json pairs = json::array();
        for (const auto& p : P.positive_coxeter_pairs(x)) pairs.push_back(P.pair_json(p));
        auto ch = P.characterize(x);
        json characterization{{"condition_one", ch.condition_one},
                              {"condition_two", ch.condition_two},
                              {"result", ch.result()},
                              {"path_dimension", ch.path_dimension}};
        if (ch.witness) characterization["witness"] = word_text(W, *ch.witness);
        emit({{"x", A.to_json(x)},
              {"positive_coxeter", !pairs.empty()},
              {"finite_coxeter_part", P.has_finite_coxeter_part(x)},
              {"pairs", pairs},
              {"characterization", characterization}});
    } else if (report->parsed()) {
        emit(ws->pct().report_json(ws->pct().bgx_report(element())));
    } else if (endpoint->parsed()) {
        auto x = element();
        const auto& P = ws->pct();
        auto rep = P.bgx_report(x);
        std::vector<adlv::BGClass> classes;
        if (!class_text.empty()) {
            classes.push_back(parse_class(*ws, class_text));
        } else {
            for (const auto& row : rep.rows) classes.push_back(row.b);
        }
        json out = json::array();
        for (const auto& b : classes) {
            json j = P.certificate_json(P.endpoint_class(rep.pair, b));
            auto data = P.very_special_data(rep.pair, b);
            json special{{"tau", A.to_json(data.tau)}, {"K", data.K}, {"all_very_special", data.all_very_special},
                         {"longest_length", data.longest_length}};
            if (data.coxeter_word) special["coxeter_word"] = *data.coxeter_word;
            j["very_special"] = special;
            out.push_back(j);
        }
        emit({{"x", A.to_json(x)}, {"pair", P.pair_json(rep.pair)}, {"endpoints", out}});
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const adlv::InvariantViolation& e) {
        std::cerr << "internal invariant violated: " << e.what() << '\n';
        return kInvariant;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "computation failed: " << e.what() << '\n';
        return kComputation;
    }
}
