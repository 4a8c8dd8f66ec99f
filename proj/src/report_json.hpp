#pragma once

#include <vector>

#include "exdyn/verify.hpp"
#include "json.hpp"

namespace exdyn {

nlohmann::ordered_json report_to_json(const CheckReport& report);
nlohmann::ordered_json reports_to_json(const std::vector<CheckReport>& reports);

}  // namespace exdyn
