#include "adlv/workspace.hpp"

namespace adlv {

Workspace::Workspace(RootDatum datum, int slack) {
    datum_ = std::make_shared<const RootDatum>(std::move(datum));
    weyl_ = std::make_shared<const WeylGroup>(datum_);
    affine_ = std::make_shared<const AffineWeylGroup>(weyl_);
    qbg_ = std::make_shared<const QuantumBruhatGraph>(weyl_);
    invariants_ = std::make_shared<const BGInvariants>(affine_);
    reduction_ = std::make_shared<const ReductionEngine>(invariants_, slack);
    pct_ = std::make_shared<const PctAnalyzer>(reduction_, qbg_);
}

std::shared_ptr<Workspace> Workspace::load(const std::string& path, int slack) {
    return std::make_shared<Workspace>(load_root_datum(path), slack);
}

std::shared_ptr<Workspace> Workspace::from_json(const nlohmann::json& spec, int slack) {
    return std::make_shared<Workspace>(parse_root_datum(spec), slack);
}

}  // namespace adlv
