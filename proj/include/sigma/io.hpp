#ifndef SIGMA_IO_HPP
#define SIGMA_IO_HPP

#include "sigma/decide.hpp"

#include <json.hpp>

#include <string>

namespace sigma {

// Complex file schema:
//   {"ring": {"coefficients": "Z"|"Q"|"Fp", "p": <prime iff Fp>, "deck_rank": r},
//    "ranks": [n0, ...],
//    "boundaries": [{"degree": i, "entries":
//        [{"row": r, "col": c, "terms": [[[e1,...,er], num, den?], ...]}]}]}
// Integers outside the 64-bit range are decimal strings.
nlohmann::json complex_to_json(const BasedFreeComplex& c);
BasedFreeComplex complex_from_json(const nlohmann::json& j);

BasedFreeComplex from_file(const std::string& path);
void to_file(const BasedFreeComplex& c, const std::string& path);

// Resolves a CLI input: a builtin name or a path to a complex file.
BasedFreeComplex load_complex(const std::string& name_or_path);

nlohmann::json rat_to_json(const Rat& q);
Rat rat_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const GrMatrix& m);
GrMatrix matrix_from_json(const nlohmann::json& j, const RingSpec& ring, int rank, int rows,
                          int cols);

nlohmann::json certificate_to_json(const SigmaCertificate& cert);
SigmaCertificate certificate_from_json(const nlohmann::json& j, ComplexPtr c);

nlohmann::json verdict_to_json(const SigmaVerdict& v);
nlohmann::json report_to_json(const SigmaReport& rep, const BasedFreeComplex& c);

struct ParsedReport {
    SigmaReport report;
    ComplexPtr complex;
};
ParsedReport report_from_json(const nlohmann::json& j);

std::string report_to_csv(const SigmaReport& rep);

std::vector<GroupRingElem> chain_from_json(const nlohmann::json& j, const RingSpec& ring, int rank,
                                           int n);
nlohmann::json chain_to_json(const std::vector<GroupRingElem>& v);

// Canonical serialization (sorted keys, 2-space indent, trailing newline):
// identical inputs produce byte-identical files.
std::string dump_canonical(const nlohmann::json& j);
void write_text(const std::string& path, const std::string& text);
nlohmann::json read_json(const std::string& path);

}  // namespace sigma

#endif
