#include "sigma/builders.hpp"
#include "sigma/decide.hpp"
#include "sigma/domination.hpp"
#include "sigma/io.hpp"
#include "sigma/valuation.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace sigma;

namespace {

RingSpec ring_of(const std::string& s, long long p) {
    if (s == "Z") return RingSpec::Z();
    if (s == "Q") return RingSpec::Q();
    if (s == "Fp") return checked_fp(p);
    throw SchemaError("ring must be Z, Q or Fp");
}

ComplexPtr complex_of(const std::string& name_or_json) {
    if (!name_or_json.empty() && name_or_json.front() == '{')
        return std::make_shared<BasedFreeComplex>(
            complex_from_json(nlohmann::json::parse(name_or_json)));
    return std::make_shared<BasedFreeComplex>(builtin_complex(name_or_json));
}

Character dir_of(const std::vector<long long>& xi) { return Character::from_ints(xi); }

}  // namespace

PYBIND11_MODULE(_sigmainv, m) {
    m.doc() = "exact Sigma-invariant engine over free-abelian deck groups";

    m.def("builtin_names", &builtin_names);

    m.def("complex_json", [](const std::string& name) {
        return dump_canonical(complex_to_json(*complex_of(name)));
    });

    m.def("validate", [](const std::string& cx) {
        auto rep = validate(*complex_of(cx));
        py::dict d;
        d["ok"] = rep.ok;
        if (!rep.ok) d["message"] = rep.first_issue->message;
        return d;
    });

    m.def(
        "sigma_membership",
        [](const std::string& cx, const std::vector<long long>& xi, int k, const std::string& ring,
           long long p, const std::string& window, int retries) {
            auto c = complex_of(cx);
            Rat w = window.empty() ? Rat(0) : rat_from_json(nlohmann::json(window));
            SigmaVerdict v =
                sigma_membership_retrying(c, dir_of(xi), k, ring_of(ring, p), w, retries);
            return dump_canonical(verdict_to_json(v));
        },
        py::arg("complex"), py::arg("xi"), py::arg("k"), py::arg("ring") = "Z", py::arg("p") = 0,
        py::arg("window") = "", py::arg("retries") = 4);

    m.def(
        "sphere_scan",
        [](const std::string& cx, int k, const std::string& ring, long long p, bool promote_report,
           bool sigma2) {
            auto c = complex_of(cx);
            ScanOptions opts;
            SigmaReport rep = sphere_scan(c, k, ring_of(ring, p), opts);
            if (promote_report) {
                PromoteFlags flags;
                flags.sigma2_pi1_asserted = sigma2;
                rep = promote(std::move(rep), flags);
            }
            return dump_canonical(report_to_json(rep, *c));
        },
        py::arg("complex"), py::arg("k"), py::arg("ring") = "Z", py::arg("p") = 0,
        py::arg("promote") = true, py::arg("sigma2_pi1_asserted") = false);

    m.def(
        "homology_lambda",
        [](const std::string& cx, const std::string& ring, long long p) {
            auto c = complex_of(cx);
            auto cf = std::make_shared<BasedFreeComplex>(tensor_coefficients(*c, ring_of(ring, p)));
            py::list out;
            for (const auto& h : homology_lambda(*cf)) {
                py::dict d;
                d["degree"] = h.degree;
                d["free_rank"] = h.free_rank;
                py::list fs;
                for (const auto& f : h.factors) fs.append(f.str());
                d["factors"] = fs;
                out.append(d);
            }
            return out;
        },
        py::arg("complex"), py::arg("ring") = "Q", py::arg("p") = 0);

    m.def(
        "movable_to_infinity",
        [](const std::string& cx, int degree, const std::string& cycle_json,
           const std::vector<long long>& xi, const std::string& ring, long long p) {
            auto c = complex_of(cx);
            auto z = chain_from_json(nlohmann::json::parse(cycle_json), c->ring(), c->deck_rank(),
                                     c->rank_at(degree));
            MovabilityResult r = movable_to_infinity(c, degree, z, dir_of(xi), ring_of(ring, p));
            py::dict d;
            d["status"] = r.status == Movability::Movable ? "movable"
                          : r.status == Movability::NotMovable ? "not-movable" : "undecided";
            if (r.delta) d["delta"] = r.delta->str();
            if (!r.note.empty()) d["note"] = r.note;
            return d;
        },
        py::arg("complex"), py::arg("degree"), py::arg("cycle"), py::arg("xi"),
        py::arg("ring") = "Z", py::arg("p") = 0);

    m.def(
        "cat_upper_bound",
        [](const std::string& cx, const std::vector<long long>& xi, int k, const std::string& ring,
           long long p, bool sigma2) {
            auto c = complex_of(cx);
            ScanOptions opts;
            Character chi = dir_of(xi);
            opts.directions = {chi, chi.negated()};
            SigmaReport rep = sphere_scan(c, k, ring_of(ring, p), opts);
            PromoteFlags flags;
            flags.sigma2_pi1_asserted = sigma2;
            rep = promote(std::move(rep), flags);
            CatBound b = cat_upper_bound(rep, chi);
            py::dict d;
            d["bound"] = b.bound;
            d["conditional"] = b.conditional;
            d["provenance"] = b.provenance;
            if (!b.note.empty()) d["note"] = b.note;
            return d;
        },
        py::arg("complex"), py::arg("xi"), py::arg("k"), py::arg("ring") = "Z", py::arg("p") = 0,
        py::arg("sigma2_pi1_asserted") = false);

    m.def(
        "dominate",
        [](const std::string& cx, const std::string& window) {
            auto c = complex_of(cx);
            Rat w = window.empty() ? default_window(*c, Character::from_ints({1}))
                                   : rat_from_json(nlohmann::json(window));
            DominationResult res = finite_type_reduce(c, c->dim(), w);
            py::dict d;
            d["complex"] = dump_canonical(complex_to_json(*res.d));
            py::list hom;
            for (const auto& h : res.homology) {
                py::dict e;
                e["degree"] = h.degree;
                e["free_rank"] = h.free_rank;
                py::list tor;
                for (const auto& t : h.torsion) tor.append(t.str());
                e["torsion"] = tor;
                hom.append(e);
            }
            d["homology"] = hom;
            d["ball_radius"] = rat_to_json(res.constants.ball_radius).dump();
            return d;
        },
        py::arg("complex"), py::arg("window") = "");

    m.def(
        "presentation_complex",
        [](const std::vector<std::string>& generators, const std::vector<std::string>& relators,
           const std::map<std::string, std::vector<long long>>& abelianization, int deck_rank) {
            PresentationInput p;
            p.generators = generators;
            p.relators = relators;
            for (const auto& [g, v] : abelianization) p.abelianization[g] = v;
            p.deck_rank = deck_rank;
            return dump_canonical(complex_to_json(presentation_complex(p)));
        },
        py::arg("generators"), py::arg("relators"), py::arg("abelianization"),
        py::arg("deck_rank"));

    m.def("verify_report", [](const std::string& report_json) {
        ParsedReport pr = report_from_json(nlohmann::json::parse(report_json));
        int yes = 0, okc = 0;
        for (const auto& v : pr.report.verdicts) {
            if (v.status != Status::Yes) continue;
            ++yes;
            if (v.certificate && verify_certificate(*v.certificate).accepted) ++okc;
        }
        py::dict d;
        d["yes"] = yes;
        d["verified"] = okc;
        d["ok"] = yes == okc;
        return d;
    });
}
