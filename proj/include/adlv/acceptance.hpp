#pragma once

#include "adlv/workspace.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace adlv {

// Per-element consistency report used by `scan` and the acceptance suite.
struct ElementReport {
    AffineElement x;
    std::int64_t length = 0;
    bool positive_coxeter = false;
    bool finite_coxeter_part = false;
    bool characterization = false;
    bool polynomials_match = true;  // class polynomial == q^{l_II} (q-1)^{l_I}
    bool one_path_per_class = true;
    bool interval_matches = true;
    bool newton_extremes_match = true;
    bool endpoints_match = true;
    std::vector<std::string> messages;
    nlohmann::json detail;

    bool consistent() const;
};

ElementReport analyze_element(const Workspace& ws, const AffineElement& x);
nlohmann::json element_report_json(const Workspace& ws, const ElementReport& report);

// All tau * u with tau from the length-zero box [-1, 1] and l(u) <= max_length.
std::vector<AffineElement> scan_elements(const Workspace& ws, int max_length);

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct AcceptanceOptions {
    std::string data_dir;  // directory holding the datum JSON fixtures
};

// Data directory: ADLV_DATA_DIR if set, else the compiled-in fixture path.
std::string default_data_dir();

CriterionResult run_criterion(int id, const AcceptanceOptions& options);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);
std::string format_result(const CriterionResult& result);

constexpr int kCriterionCount = 10;

}  // namespace adlv
