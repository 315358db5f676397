#include "adlv/acceptance.hpp"
#include "adlv/workspace.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

namespace py = pybind11;
using nlohmann::json;

namespace {

// Python-facing handle. Elements and results cross the boundary as JSON text.
class Session {
  public:
    explicit Session(std::shared_ptr<adlv::Workspace> ws) : ws_(std::move(ws)) {}

    static Session load(const std::string& path, std::optional<int> slack) {
        return Session(adlv::Workspace::load(path, slack.value_or(adlv::slack_from_environment())));
    }
    static Session from_spec(const std::string& spec, std::optional<int> slack) {
        return Session(adlv::Workspace::from_json(json::parse(spec), slack.value_or(adlv::slack_from_environment())));
    }

    std::string datum() const { return ws_->datum().to_json().dump(); }
    int rank() const { return ws_->datum().rank(); }
    std::size_t weyl_order() const { return ws_->weyl().order(); }

    std::int64_t length(const std::string& x) const { return A().length(A().parse(x)); }
    std::string multiply(const std::string& x, const std::string& y) const {
        return A().format(A().mul(A().parse(x), A().parse(y)));
    }
    std::string inverse(const std::string& x) const { return A().format(A().inverse(A().parse(x))); }
    std::string simple_reflection(int label) const {
        return A().format(A().simple_reflection(ws_->datum().affine_index(label)));
    }
    std::vector<std::string> omega_elements(int box) const {
        std::vector<std::string> out;
        for (const auto& tau : A().omega_elements(box)) out.push_back(A().format(tau));
        return out;
    }

    std::vector<std::vector<int>> lp(const std::string& x) const {
        std::vector<std::vector<int>> out;
        for (auto v : A().lp_set(A().parse(x))) out.push_back(one_based(ws_->weyl().reduced_word(v)));
        return out;
    }

    std::string newton(const std::string& x) const {
        return adlv::rational_vector_json(ws_->invariants().newton(A().parse(x))).dump();
    }
    std::string class_of(const std::string& x) const {
        return ws_->invariants().to_json(ws_->invariants().class_of(A().parse(x))).dump();
    }

    std::string class_polynomials(const std::string& x, std::optional<std::uint64_t> seed) const {
        const auto& R = ws_->reduction();
        auto policy = seed ? adlv::TreePolicy::seeded(*seed) : adlv::TreePolicy::deterministic();
        json out = json::array();
        for (const auto& [key, f] : R.class_polynomials(R.build_tree(A().parse(x), policy)))
            out.push_back({{"class", R.key_json(key)}, {"coefficients", f.coeffs()}, {"polynomial", f.format()}});
        return out.dump();
    }

    std::string tree(const std::string& x) const {
        const auto& R = ws_->reduction();
        return R.tree_json(R.build_tree(A().parse(x))).dump();
    }

    std::string classify(const std::string& x) const {
        const auto element = A().parse(x);
        const auto& P = ws_->pct();
        json pairs = json::array();
        for (const auto& p : P.positive_coxeter_pairs(element)) pairs.push_back(P.pair_json(p));
        return json{{"positive_coxeter", !pairs.empty()},
                    {"finite_coxeter_part", P.has_finite_coxeter_part(element)},
                    {"characterization", P.characterize(element).result()},
                    {"pairs", pairs}}
            .dump();
    }

    std::string report(const std::string& x) const { return ws_->pct().report_json(ws_->pct().bgx_report(A().parse(x))).dump(); }

    std::string analyze(const std::string& x) const {
        return adlv::element_report_json(*ws_, adlv::analyze_element(*ws_, A().parse(x))).dump();
    }

    std::vector<std::string> scan(int max_length) const {
        std::vector<std::string> out;
        for (const auto& x : adlv::scan_elements(*ws_, max_length)) out.push_back(A().format(x));
        return out;
    }

  private:
    const adlv::AffineWeylGroup& A() const { return ws_->affine(); }
    static std::vector<int> one_based(std::vector<int> word) {
        for (auto& letter : word) ++letter;
        return word;
    }
    std::shared_ptr<adlv::Workspace> ws_;
};

}  // namespace

PYBIND11_MODULE(_adlv, m) {
    m.doc() = "Affine Deligne-Lusztig varieties of positive Coxeter type (native core)";

    py::register_exception<adlv::ComputationError>(m, "ComputationError", PyExc_RuntimeError);
    py::register_exception<adlv::InvariantViolation>(m, "InvariantViolation", PyExc_AssertionError);

    py::class_<Session>(m, "Session")
        .def_static("load", &Session::load, py::arg("path"), py::arg("slack") = py::none())
        .def_static("from_spec", &Session::from_spec, py::arg("spec"), py::arg("slack") = py::none())
        .def("datum", &Session::datum)
        .def_property_readonly("rank", &Session::rank)
        .def_property_readonly("weyl_order", &Session::weyl_order)
        .def("length", &Session::length)
        .def("multiply", &Session::multiply)
        .def("inverse", &Session::inverse)
        .def("simple_reflection", &Session::simple_reflection)
        .def("omega_elements", &Session::omega_elements, py::arg("box") = 1)
        .def("lp", &Session::lp)
        .def("newton", &Session::newton)
        .def("class_of", &Session::class_of)
        .def("class_polynomials", &Session::class_polynomials, py::arg("x"), py::arg("seed") = py::none())
        .def("tree", &Session::tree)
        .def("classify", &Session::classify)
        .def("report", &Session::report)
        .def("analyze", &Session::analyze)
        .def("scan", &Session::scan, py::arg("max_length"), py::call_guard<py::gil_scoped_release>());

    m.def(
        "selftest",
        [](int criterion, const std::string& data_dir) {
            adlv::AcceptanceOptions options;
            options.data_dir = data_dir.empty() ? adlv::default_data_dir() : data_dir;
            std::vector<std::tuple<int, bool, std::string>> out;
            std::vector<adlv::CriterionResult> results;
            if (criterion > 0)
                results.push_back(adlv::run_criterion(criterion, options));
            else
                results = adlv::run_acceptance(options);
            for (const auto& r : results) out.emplace_back(r.id, r.pass, adlv::format_result(r));
            return out;
        },
        py::arg("criterion") = 0, py::arg("data_dir") = "", py::call_guard<py::gil_scoped_release>());
}
