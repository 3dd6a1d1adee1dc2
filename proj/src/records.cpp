#include "tandet/records.hpp"

namespace tandet::harness {

using nlohmann::ordered_json;

namespace {

ordered_json params_json(const std::map<std::string, long>& params) {
    ordered_json j = ordered_json::object();
    for (const auto& [k, v] : params) j[k] = v;
    return j;
}

}  // namespace

ordered_json to_json(const VerificationRecord& r) {
    ordered_json j;
    j["id"] = r.id;
    j["family"] = r.family;
    j["params"] = params_json(r.params);
    j["engine"] = r.engine;
    j["prec_bits"] = static_cast<long>(r.prec_bits);
    j["enclosure"] = {{"mid_dec", r.mid_dec}, {"rad_dec", r.rad_dec}};
    j["exact"] = {{"present", r.exact_present}, {"value_repr", r.exact_repr}};
    j["predicted"] = r.predicted;
    j["verdict"] = recognize::verdict_name(r.verdict);
    j["observed_sign"] = r.observed_sign;
    j["recognized"] = r.recognized ? r.recognized->get_str() : "";
    j["quotient"] = r.quotient ? r.quotient->get_str() : "";
    j["certificate"] = r.certificate;
    j["note"] = r.note;
    j["runtime_ms"] = r.runtime_ms;
    return j;
}

ordered_json to_json(const ScanRow& r) {
    ordered_json j;
    j["id"] = r.id;
    j["conjecture"] = r.conjecture;
    j["family"] = r.family;
    j["params"] = params_json(r.params);
    j["engine"] = r.engine;
    j["prec_bits"] = static_cast<long>(r.prec_bits);
    j["enclosure"] = {{"mid_dec", r.mid_dec}, {"rad_dec", r.rad_dec}};
    j["divisor"] = r.divisor_repr;
    j["quotient"] = r.quotient ? r.quotient->get_str() : "";
    j["verdict"] = r.verdict;
    j["note"] = r.note;
    j["runtime_ms"] = r.runtime_ms;
    return j;
}

ordered_json to_json(const SequenceRecord& r) {
    ordered_json j;
    j["n"] = r.n;
    j["value"] = r.value.get_str();
    j["certified"] = r.certified;
    j["source"] = r.source;
    j["prec_bits"] = static_cast<long>(r.prec_bits);
    j["runtime_ms"] = r.runtime_ms;
    return j;
}

ordered_json to_json(const OeisReport& r) {
    ordered_json j;
    j["sequence_id"] = r.sequence_id;
    j["mismatches"] = r.mismatches;
    j["gaps"] = r.gaps;
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows) {
        ordered_json rj;
        rj["n"] = row.n;
        rj["computed"] = row.computed.get_str();
        rj["reference"] = row.reference ? row.reference->get_str() : "";
        rj["relation"] = row.relation;
        rj["status"] = row.status;
        rows.push_back(rj);
    }
    j["rows"] = rows;
    return j;
}

}  // namespace tandet::harness
