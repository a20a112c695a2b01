#pragma once

#include <string>

#include <json.hpp>

#include "opint/matrix_core.hpp"
#include "opint/report.hpp"
#include "opint/taylor.hpp"

namespace opint {

using json = nlohmann::json;

/// {"d": n, "re": [[..]], "im": [[..]]}, row major.
json matrix_to_json(const Mat& x);
Mat matrix_from_json(const json& j);

/// {"coeffs": [{"m": degree, "re": .., "im": ..}, ..]}, ascending degree.
json trigpoly_to_json(const TrigPoly& f);
TrigPoly trigpoly_from_json(const json& j);

json report_to_json(const CheckReport& r);
json remainder_report_to_json(const RemainderReport& r);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace opint
