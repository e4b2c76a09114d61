#pragma once

#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

#include "dynframe/inner.hpp"
#include "dynframe/operators.hpp"
#include "dynframe/types.hpp"

namespace dynframe::serialize {

using Json = nlohmann::ordered_json;

// Complex numbers travel as [re, im]; matrices as row-major nested lists.
Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);

Json mat_to_json(const Mat& m);
Mat mat_from_json(const Json& j);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);

// Operator payload of the CLI schema: kind dense | diagonal | preset |
// blaschke-model. The blaschke-model kind also yields the inner function
// itself for the tasks that act on it.
struct OperatorInput {
  ops::OperatorSpec op;
  std::optional<inner::MatrixInner> inner_function;
};

struct ParsedOperator {
  Json echo;
  std::optional<inner::MatrixInner> inner_function;
  // The operator may need the truncation cutoff (blaschke-model); build
  // resolves it.
  std::function<OperatorInput(Index cutoff)> build;
};

ParsedOperator parse_operator(const Json& spec);

inner::BlaschkeProduct blaschke_from_json(const Json& j);
inner::MatrixInner matrix_inner_from_json(const Json& j);

// CSV with complex entries quoted as "re,im".
std::string mat_to_csv(const Mat& m);

}  // namespace dynframe::serialize
