#include "equistrata/pipeline.hpp"

#include <future>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace equistrata {

namespace {

LocusRow process_locus(const Realizations& reals, const RootDatum& datum,
                       const KernelCandidate& cand, const MomentumLocus& locus,
                       bool float_check) {
    LocusRow row;
    row.locus = locus;
    row.algebra = isotropy_algebra_at(reals, datum, cand, locus);
    verify_kernel_exact(reals, row.algebra);
    row.rrs = restricted_roots(row.algebra, datum);
    row.cls = classify(row.rrs);
    row.dims = stratum_dimension(datum, row.algebra);
    if (float_check) {
        row.float_kernel_dim = float_oracle_kernel_dim(reals, datum, cand, locus);
        row.float_agrees = row.float_kernel_dim == row.algebra.total_dim;
    }
    return row;
}

}  // namespace

Report run_pipeline(const RunConfig& cfg, Stage stage) {
    Report report;
    report.stage = stage;
    RootDatum datum(cfg.group_spec);
    report.group = datum.spec().to_string();

    RepSpec rep = make_rep_spec(datum, cfg.components);
    for (size_t i = 0; i < rep.components.size(); ++i) {
        Report::ComponentInfo info;
        info.highest_weight = rep.components[i].highest_weight;
        info.eigenvalue = rep.components[i].eigenvalue;
        info.dim = weyl_dimension(datum, info.highest_weight);
        info.weights = rep.weight_systems[i];
        report.components.push_back(std::move(info));
    }
    if (stage == Stage::Weights) return report;

    auto candidates = enumerate_kernel_candidates(rep, datum, cfg.options.max_kernel_size);
    for (auto& cand : candidates) {
        KernelRow row;
        row.candidate = std::move(cand);
        report.kernels.push_back(std::move(row));
    }
    if (stage == Stage::Kernels) return report;

    RealizationCache cache;
    Realizations reals;
    for (const auto& comp : rep.components)
        reals.push_back(cache.get(datum, comp.highest_weight, cfg.options.module_dim_cap));

    for (auto& row : report.kernels) {
        try {
            auto loci = enumerate_momentum_loci(datum, row.candidate);
            // loci are independent work items; futures are collected in order
            std::vector<std::future<LocusRow>> futures;
            for (const auto& locus : loci)
                futures.push_back(std::async(std::launch::async, process_locus, std::cref(reals),
                                             std::cref(datum), std::cref(row.candidate), locus,
                                             cfg.options.float_check));
            for (auto& f : futures) row.loci.push_back(f.get());

            for (const auto& [comp, w] : row.candidate.flattened()) {
                PureStateRow ps;
                ps.weight = w;
                ps.component = comp;
                ps.algebra = pure_state_isotropy(datum, rep.weight_systems[comp], w);
                ps.cls = classify(restricted_roots(ps.algebra, datum));
                ps.dims = stratum_dimension(datum, ps.algebra);
                ps.g_mu_dim = datum.centralizer_dim(w);
                size_t n_mu_roots = datum.walls_containing(w).vanishing_roots.size();
                size_t supported = 0;
                for (const auto& [r, d] : ps.algebra.root_support)
                    if (d == 2) ++supported;
                ps.root_support_covers_g_mu = supported == n_mu_roots;
                row.pure_states.push_back(std::move(ps));
            }
            for (const auto& lr : row.loci)
                if (!lr.float_agrees) {
                    report.internal_check_failed = true;
                    row.error = "float oracle disagrees with the exact kernel dimension";
                }
        } catch (const InternalCheckError& e) {
            row.error = e.what();
            report.internal_check_failed = true;
        } catch (const ResourceError& e) {
            throw;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    }
    return report;
}

namespace {

using json = nlohmann::ordered_json;

json qvec_json(const CoordFrame& frame, const QVec& ambient_weight, bool torus = false) {
    QVec coords =
        torus ? frame.torus_to_coords(ambient_weight) : frame.weight_to_coords(ambient_weight);
    json arr = json::array();
    for (const auto& c : coords) arr.push_back(rat_to_string(c));
    return arr;
}

std::string weight_key(const CoordFrame& frame, const QVec& w) {
    return qvec_to_string(frame.weight_to_coords(w));
}

json isotropy_json(const CoordFrame& frame, const RootDatum& datum, const IsotropyAlgebra& alg,
                   const RestrictedRootSystem* rrs, const Classification& cls) {
    json iso;
    iso["dim"] = alg.total_dim;
    iso["rank"] = alg.rank();
    json torus = json::array();
    for (size_t i = 0; i < alg.torus_part.rows(); ++i)
        torus.push_back(qvec_json(frame, alg.torus_part.row(i), true));
    iso["torus_basis"] = torus;
    json support = json::object();
    for (const auto& [r, d] : alg.root_support)
        support[weight_key(frame, datum.positive_root(r))] = d;
    iso["root_support"] = support;
    if (rrs) {
        json roots = json::array();
        for (const auto& [r, m] : rrs->roots) {
            json e;
            e["restriction"] = qvec_to_string(r);
            e["mult"] = m;
            roots.push_back(e);
        }
        iso["roots"] = roots;
        iso["abelian_dim"] = rrs->abelian_dim;
    }
    json basis = json::array();
    for (const auto& cl : alg.classes)
        for (const auto& elem : cl.elements) {
            json b = json::object();
            for (const auto& [root_id, ab] : elem) {
                const auto& [a, bb] = ab;
                // coefficient of X_rho is a + i b, of Y_rho is -(a - i b)
                AlgebraicNumber z = a + AlgebraicNumber::i_unit() * bb;
                b[weight_key(frame, datum.positive_root(root_id))] = z.to_string();
            }
            basis.push_back(b);
        }
    iso["basis"] = basis;
    iso["name"] = cls.name;
    iso["classified"] = cls.named;
    iso["fingerprint"] = cls.fingerprint;
    return iso;
}

json report_json(const Report& report, const RunConfig& cfg) {
    RootDatum datum(cfg.group_spec);
    CoordFrame frame = cfg.frame(datum);
    json j;
    j["group"] = report.group;
    j["dim_g"] = datum.dim_g();
    json comps = json::array();
    for (const auto& c : report.components) {
        json jc;
        jc["highest_weight"] = qvec_json(frame, c.highest_weight);
        jc["eigenvalue"] = rat_to_string(c.eigenvalue);
        jc["dim"] = c.dim.str();
        json ws = json::array();
        for (const auto& [w, m] : c.weights.entries) {
            json jw;
            jw["coords"] = qvec_json(frame, w);
            jw["mult"] = m;
            ws.push_back(jw);
        }
        jc["weights"] = ws;
        comps.push_back(jc);
    }
    j["components"] = comps;
    json kernels = json::array();
    for (const auto& row : report.kernels) {
        json jk;
        json parts = json::array();
        for (const auto& [comp, ws] : row.candidate.parts) {
            json p;
            p["component"] = comp;
            json pw = json::array();
            for (const auto& w : ws) pw.push_back(qvec_json(frame, w));
            p["weights"] = pw;
            parts.push_back(p);
        }
        jk["S"] = parts;
        jk["full"] = row.candidate.full;
        jk["linear_independent"] = row.candidate.linear_independent;
        jk["x_dim"] = row.candidate.x_dim;
        if (!row.error.empty()) jk["error"] = row.error;
        if (report.stage == Stage::Strata) {
            json loci = json::array();
            for (const auto& lr : row.loci) {
                json jl;
                jl["generic"] = lr.locus.generic;
                json part = json::array();
                for (const auto& block : lr.locus.partition) {
                    json b = json::array();
                    for (size_t i : block) b.push_back(i);
                    part.push_back(b);
                }
                jl["partition"] = part;
                jl["mu"] = qvec_json(frame, lr.locus.mu);
                json mags = json::object();
                auto flat = row.candidate.flattened();
                for (size_t i = 0; i < flat.size(); ++i)
                    mags[weight_key(frame, flat[i].second)] =
                        rat_to_string(lr.locus.magnitudes[i]);
                jl["magnitudes"] = mags;
                json wall = json::array();
                for (int r : lr.locus.wall.vanishing_roots)
                    wall.push_back(weight_key(frame, datum.positive_root(r)));
                jl["wall_roots"] = wall;
                jl["isotropy"] = isotropy_json(frame, datum, lr.algebra, &lr.rrs, lr.cls);
                jl["stratum_dim"] = lr.dims.stratum_dim;
                jl["generator_space_dim"] = lr.dims.generator_space_dim;
                if (lr.float_kernel_dim >= 0)
                    jl["float_check"] = lr.float_agrees ? "ok" : "mismatch";
                loci.push_back(jl);
            }
            jk["loci"] = loci;
            json pures = json::array();
            for (const auto& ps : row.pure_states) {
                json jp;
                jp["weight"] = qvec_json(frame, ps.weight);
                jp["component"] = ps.component;
                jp["isotropy"] = isotropy_json(frame, datum, ps.algebra, nullptr, ps.cls);
                jp["g_mu_dim"] = ps.g_mu_dim;
                jp["root_support_covers_g_mu"] = ps.root_support_covers_g_mu;
                jp["stratum_dim"] = ps.dims.stratum_dim;
                jp["generator_space_dim"] = ps.dims.generator_space_dim;
                pures.push_back(jp);
            }
            jk["pure_states"] = pures;
        }
        kernels.push_back(jk);
    }
    j["kernels"] = kernels;
    return j;
}

std::string parts_to_string(const CoordFrame& frame, const KernelCandidate& cand) {
    std::string s;
    for (const auto& [comp, ws] : cand.parts) {
        if (!s.empty()) s += " | ";
        s += "U" + std::to_string(comp) + ": {";
        for (size_t i = 0; i < ws.size(); ++i) {
            if (i) s += ", ";
            s += qvec_to_string(frame.weight_to_coords(ws[i]));
        }
        s += "}";
    }
    return s;
}

std::string report_table(const Report& report, const RunConfig& cfg) {
    RootDatum datum(cfg.group_spec);
    CoordFrame frame = cfg.frame(datum);
    std::ostringstream out;
    out << "group " << report.group << "  (dim " << datum.dim_g() << ", rank "
        << datum.cartan_dim() << ")\n";
    for (size_t i = 0; i < report.components.size(); ++i) {
        const auto& c = report.components[i];
        out << "component " << i << ": highest weight "
            << qvec_to_string(frame.weight_to_coords(c.highest_weight)) << ", c/2pi = "
            << rat_to_string(c.eigenvalue) << ", dim " << c.dim.str() << "\n";
        if (report.stage == Stage::Weights) {
            for (const auto& [w, m] : c.weights.entries)
                out << "    " << qvec_to_string(frame.weight_to_coords(w)) << "  mult " << m
                    << "\n";
        }
    }
    if (report.stage == Stage::Weights) return out.str();

    out << "kernel candidates: " << report.kernels.size() << "\n";
    for (size_t k = 0; k < report.kernels.size(); ++k) {
        const auto& row = report.kernels[k];
        out << "[" << k << "] S = " << parts_to_string(frame, row.candidate)
            << "  full=" << (row.candidate.full ? "yes" : "no")
            << " lin.indep=" << (row.candidate.linear_independent ? "yes" : "no")
            << " dim X=" << row.candidate.x_dim << "\n";
        if (!row.error.empty()) out << "    error: " << row.error << "\n";
        if (report.stage != Stage::Strata) continue;
        for (const auto& lr : row.loci) {
            out << "    locus " << (lr.locus.generic ? "generic" : "special ") << " mu="
                << qvec_to_string(frame.weight_to_coords(lr.locus.mu)) << " mags=(";
            for (size_t i = 0; i < lr.locus.magnitudes.size(); ++i)
                out << (i ? "," : "") << rat_to_string(lr.locus.magnitudes[i]);
            out << ")  g_x: dim " << lr.algebra.total_dim << " rank " << lr.algebra.rank()
                << " = " << lr.cls.name << "  stratum dim " << lr.dims.stratum_dim
                << " (gen " << lr.dims.generator_space_dim << ")";
            if (lr.float_kernel_dim >= 0)
                out << "  float:" << (lr.float_agrees ? "ok" : "MISMATCH");
            out << "\n";
        }
        for (const auto& ps : row.pure_states) {
            out << "    pure state " << qvec_to_string(frame.weight_to_coords(ps.weight))
                << "  g_x: dim " << ps.algebra.total_dim << " = " << ps.cls.name
                << "  (dim g_mu " << ps.g_mu_dim << ", root support covers g_mu: "
                << (ps.root_support_covers_g_mu ? "yes" : "no") << ")  stratum dim "
                << ps.dims.stratum_dim << "\n";
        }
    }
    return out.str();
}

}  // namespace

std::string emit_report(const Report& report, const RunConfig& cfg, const std::string& format) {
    if (format == "json") return report_json(report, cfg).dump(2) + "\n";
    if (format == "table") return report_table(report, cfg);
    throw ConfigError("unknown output format '" + format + "'");
}

}  // namespace equistrata
