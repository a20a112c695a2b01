#include "opint/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace opint {

json matrix_to_json(const Mat& x) {
  const int d = static_cast<int>(x.rows());
  if (x.cols() != d) throw std::invalid_argument("matrix must be square");
  json re = json::array(), im = json::array();
  for (int r = 0; r < d; ++r) {
    json rrow = json::array(), irow = json::array();
    for (int c = 0; c < d; ++c) {
      rrow.push_back(x(r, c).real());
      irow.push_back(x(r, c).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return json{{"d", d}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Mat matrix_from_json(const json& j) {
  const int d = j.at("d").get<int>();
  if (d < 1) throw std::invalid_argument("matrix dimension must be positive");
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<int>(re.size()) != d || static_cast<int>(im.size()) != d)
    throw std::invalid_argument("matrix row count does not match d");
  Mat x(d, d);
  for (int r = 0; r < d; ++r) {
    if (static_cast<int>(re[r].size()) != d || static_cast<int>(im[r].size()) != d)
      throw std::invalid_argument("matrix column count does not match d");
    for (int c = 0; c < d; ++c)
      x(r, c) = cplx(re[r][c].get<double>(), im[r][c].get<double>());
  }
  return x;
}

json trigpoly_to_json(const TrigPoly& f) {
  json coeffs = json::array();
  for (const auto& [m, c] : f.coeffs())
    coeffs.push_back(json{{"m", m}, {"re", c.real()}, {"im", c.imag()}});
  return json{{"coeffs", std::move(coeffs)}};
}

TrigPoly trigpoly_from_json(const json& j) {
  std::map<int, cplx> coeffs;
  for (const auto& entry : j.at("coeffs")) {
    const int m = entry.at("m").get<int>();
    coeffs[m] += cplx(entry.at("re").get<double>(), entry.at("im").get<double>());
  }
  return TrigPoly(std::move(coeffs));
}

json report_to_json(const CheckReport& r) {
  json j{{"identity", r.identity}, {"p", r.p},
         {"residual_abs", r.residual_abs}, {"residual_rel", r.residual_rel},
         {"pass", r.pass}, {"seed", r.seed}, {"wall_ms", r.wall_ms}};
  if (!r.sequence.empty()) j["sequence"] = r.sequence;
  return j;
}

json remainder_report_to_json(const RemainderReport& r) {
  return json{{"identity", "taylor-remainder"},
              {"order", r.order},
              {"p", r.p},
              {"p_effective", r.p_effective},
              {"quasi_norm", r.quasi_norm},
              {"remainder_norm", r.remainder_norm},
              {"residual_rel", r.residual_rel},
              {"estimate_ratio", r.estimate_ratio},
              {"derivative_ratio", r.derivative_ratio},
              {"scaling_slope", r.scaling_slope},
              {"pass", r.pass},
              {"seed", r.seed},
              {"wall_ms", r.wall_ms}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace opint
