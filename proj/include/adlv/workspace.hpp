#pragma once

#include "adlv/pct.hpp"

#include <json.hpp>

#include <memory>
#include <string>

namespace adlv {

// Everything built on one root datum.
class Workspace {
  public:
    explicit Workspace(RootDatum datum, int slack = ReductionEngine::kDefaultSlack);
    static std::shared_ptr<Workspace> load(const std::string& path, int slack = ReductionEngine::kDefaultSlack);
    static std::shared_ptr<Workspace> from_json(const nlohmann::json& spec, int slack = ReductionEngine::kDefaultSlack);

    const RootDatum& datum() const { return *datum_; }
    const WeylGroup& weyl() const { return *weyl_; }
    const AffineWeylGroup& affine() const { return *affine_; }
    const QuantumBruhatGraph& qbg() const { return *qbg_; }
    const BGInvariants& invariants() const { return *invariants_; }
    const ReductionEngine& reduction() const { return *reduction_; }
    const PctAnalyzer& pct() const { return *pct_; }

  private:
    std::shared_ptr<const RootDatum> datum_;
    std::shared_ptr<const WeylGroup> weyl_;
    std::shared_ptr<const AffineWeylGroup> affine_;
    std::shared_ptr<const QuantumBruhatGraph> qbg_;
    std::shared_ptr<const BGInvariants> invariants_;
    std::shared_ptr<const ReductionEngine> reduction_;
    std::shared_ptr<const PctAnalyzer> pct_;
};

}  // namespace adlv
