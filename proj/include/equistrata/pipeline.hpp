#ifndef EQUISTRATA_PIPELINE_HPP
#define EQUISTRATA_PIPELINE_HPP

#include "equistrata/classifier.hpp"
#include "equistrata/config.hpp"

namespace equistrata {

enum class Stage { Weights, Kernels, Strata };

struct LocusRow {
    MomentumLocus locus;
    IsotropyAlgebra algebra;
    RestrictedRootSystem rrs;
    Classification cls;
    StratumDims dims{};
    int float_kernel_dim = -1;  // -1 when the check is off
    bool float_agrees = true;
};

struct PureStateRow {
    QVec weight;
    int component = 0;
    IsotropyAlgebra algebra;
    Classification cls;
    StratumDims dims{};
    int g_mu_dim = 0;
    bool root_support_covers_g_mu = false;
};

struct KernelRow {
    KernelCandidate candidate;
    std::vector<LocusRow> loci;
    std::vector<PureStateRow> pure_states;
    std::string error;  // nonempty if this candidate's strata computation failed
};

struct Report {
    Stage stage = Stage::Weights;
    std::string group;
    struct ComponentInfo {
        QVec highest_weight;
        Rational eigenvalue;
        Integer dim;
        WeightSystem weights;
    };
    std::vector<ComponentInfo> components;
    std::vector<KernelRow> kernels;
    bool internal_check_failed = false;
};

Report run_pipeline(const RunConfig& cfg, Stage stage);

std::string emit_report(const Report& report, const RunConfig& cfg, const std::string& format);

}  // namespace equistrata

#endif
