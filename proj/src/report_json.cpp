#include "report_json.hpp"

namespace exdyn {

nlohmann::ordered_json report_to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["theorem"] = r.theorem;
  j["model"] = r.model;
  j["sectors"] = {{"min", r.nmin}, {"max", r.nmax}};
  j["verdict"] = to_string(r.verdict);
  if (r.arithmetic.is_exact()) {
    j["arithmetic"] = {{"mode", "exact"}};
  } else {
    j["arithmetic"] = {{"mode", "float"}, {"tolerance", r.arithmetic.tolerance}};
  }
  j["checked"] = r.checked;
  j["excluded_sectors"] = r.excluded;
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (r.witness) {
    const Witness& w = *r.witness;
    nlohmann::ordered_json wj;
    wj["sector"] = w.sector;
    wj["row"] = w.row;
    wj["col"] = w.col;
    wj["lhs"] = w.lhs;
    wj["rhs"] = w.rhs;
    if (!w.note.empty()) wj["note"] = w.note;
    j["witness"] = wj;
  }
  return j;
}

nlohmann::ordered_json reports_to_json(const std::vector<CheckReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  return arr;
}

}  // namespace exdyn
