#pragma once

#include <string>

#include <json.hpp>

#include "apwen/prover.hpp"

namespace apwen::report {

inline nlohmann::ordered_json system_json(const RecurrenceSystem& sys) {
    nlohmann::ordered_json j;
    j["pattern"] = sys.pattern_text;
    j["d"] = sys.d;
    j["families"] = sys.has_uvw ? 6 : 3;
    nlohmann::ordered_json ents = nlohmann::ordered_json::object();
    int nfam = sys.has_uvw ? 6 : 3;
    for (int f = 0; f < nfam; ++f)
        for (int h = 0; h < sys.d; ++h) {
            SymVar lhs{uint8_t(f), 0};
            std::string key = std::string(1, lhs.name()[0]) + "(" + std::to_string(sys.d) +
                              "n+" + std::to_string(h) + ")";
            ents[key] = sys.entries[f][h].text();
        }
    j["entries"] = ents;
    j["type_count_xyz"] = sys.total_types_xyz;
    if (sys.has_uvw) j["type_count_uvw"] = sys.total_types_uvw;
    return j;
}

inline nlohmann::ordered_json certificate_json(const ProofCertificate& c) {
    nlohmann::ordered_json j;
    j["pattern"] = c.pattern_text;
    j["d"] = c.d;
    j["families"] = c.has_uvw ? 6 : 3;
    j["verdict"] = verdict_name(c.verdict);
    j["n_valid"] = c.n_valid;
    j["seed_count"] = c.seeds.size();
    j["closure_size"] = c.closure_size;
    j["closure_iterations"] = c.closure_iterations;
    if (c.witness) j["witness"] = *c.witness;
    if (c.bad_triple) j["bad_triple"] = *c.bad_triple;
    j["type_count_xyz"] = c.total_types_xyz;
    if (c.has_uvw) j["type_count_uvw"] = c.total_types_uvw;
    return j;
}

inline std::string certificate_text(const ProofCertificate& c) {
    std::string out;
    out += "pattern: " + c.pattern_text + "\n";
    out += "verdict: " + std::string(verdict_name(c.verdict)) + "\n";
    out += "n_valid: " + std::to_string(c.n_valid) + "\n";
    out += "seeds: " + std::to_string(c.seeds.size()) + "\n";
    out += "closure: " + std::to_string(c.closure_size) + " triples, " +
           std::to_string(c.closure_iterations) + " iterations\n";
    if (c.witness) out += "witness: m = " + std::to_string(*c.witness) + "\n";
    return out;
}

}  // namespace apwen::report
