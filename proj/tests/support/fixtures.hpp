#pragma once

#include <memory>
#include <string>

#include "shapxp/model/model.hpp"
#include "shapxp/model/model_io.hpp"

namespace fixture {

inline std::string data_path(const std::string& name) { return std::string(SHAPXP_TEST_DATA) + "/" + name; }

inline std::shared_ptr<const shapxp::Model> load(const std::string& name) {
  return std::make_shared<const shapxp::Model>(shapxp::read_model_file(data_path(name)));
}

inline shapxp::TabularClassifier k1_table() {
  return shapxp::TabularClassifier(shapxp::FeatureSpace({2, 2, 2}), {0, 3, 2, 3, 1, 1, 1, 1});
}

inline shapxp::TabularClassifier k2_table() {
  std::vector<shapxp::ClassValue> values;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) values.push_back(a == 1 ? 1 : (b == 2 && c == 2 ? 2 : 0));
  return shapxp::TabularClassifier(shapxp::FeatureSpace({2, 3, 3}), values);
}

template <typename M>
shapxp::ExplanationProblem problem(M model, shapxp::Point v) {
  return shapxp::ExplanationProblem(std::make_shared<const shapxp::Model>(std::move(model)), std::move(v));
}

inline shapxp::Rational q(long n, long d = 1) { return shapxp::make_rational(n, d); }

} // namespace fixture
