#include "dynframe/serialize.hpp"

#include <sstream>

#include "dynframe/hardy.hpp"
#include "dynframe/instances.hpp"

namespace dynframe::serialize {

using inner::BlaschkeProduct;
using inner::MatrixInner;
using ops::OperatorSpec;

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2)
    fail(ErrorCode::InvalidArgument, "complex values are [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json mat_to_json(const Mat& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    fail(ErrorCode::InvalidArgument, "matrix must be a nonempty nested list");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j[0].size());
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (static_cast<Index>(j[i].size()) != cols)
      fail(ErrorCode::InvalidArgument, "ragged matrix rows");
    for (Index c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[i][c]);
  }
  return m;
}

Json vec_to_json(const Vec& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
  return out;
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::InvalidArgument, "vector must be a list");
  Vec v(static_cast<Index>(j.size()));
  for (Index i = 0; i < v.size(); ++i) v[i] = complex_from_json(j[i]);
  return v;
}

BlaschkeProduct blaschke_from_json(const Json& j) {
  std::vector<Complex> zeros;
  if (j.contains("zeros"))
    for (const auto& z : j.at("zeros")) zeros.push_back(complex_from_json(z));
  Complex alpha(1.0, 0.0);
  if (j.contains("alpha")) alpha = complex_from_json(j.at("alpha"));
  Index power = j.value("power", 0);
  BlaschkeProduct base = BlaschkeProduct::from_zeros(zeros, alpha);
  if (power > 0)
    base = BlaschkeProduct(base.alpha(), base.zeros(), base.power() + power);
  return base;
}

MatrixInner matrix_inner_from_json(const Json& j) {
  if (j.contains("diag")) {
    std::vector<BlaschkeProduct> entries;
    for (const auto& e : j.at("diag")) entries.push_back(blaschke_from_json(e));
    if (j.contains("left") || j.contains("right")) {
      const Index d = static_cast<Index>(entries.size());
      Mat left = j.contains("left") ? mat_from_json(j.at("left"))
                                    : Mat(Mat::Identity(d, d));
      Mat right = j.contains("right") ? mat_from_json(j.at("right"))
                                      : Mat(Mat::Identity(d, d));
      return MatrixInner::product(std::move(left), std::move(entries),
                                  std::move(right));
    }
    return MatrixInner::diag(std::move(entries));
  }
  // Scalar case: zeros/power/alpha at the top level.
  return MatrixInner::diag({blaschke_from_json(j)});
}

namespace {

std::vector<Complex> sequence_from_json(const Json& spec) {
  if (spec.contains("lambdas")) {
    std::vector<Complex> out;
    for (const auto& l : spec.at("lambdas")) out.push_back(complex_from_json(l));
    return out;
  }
  const Index count = spec.value("count", 12);
  const std::string seq = spec.value("sequence", "dyadic");
  if (seq == "dyadic") return instances::dyadic_carleson(count);
  if (seq == "leveled") return instances::leveled_carleson(count);
  fail(ErrorCode::InvalidArgument, "unknown sequence '" + seq + "'");
}

}  // namespace

ParsedOperator parse_operator(const Json& spec) {
  if (!spec.contains("kind"))
    fail(ErrorCode::InvalidArgument, "operator.kind is required");
  const std::string kind = spec.at("kind").get<std::string>();
  ParsedOperator out;
  out.echo = spec;

  if (kind == "dense") {
    Mat m = mat_from_json(spec.at("matrix"));
    out.build = [m](Index) { return OperatorInput{OperatorSpec::dense(m), {}}; };
    return out;
  }
  if (kind == "diagonal") {
    Vec d = vec_from_json(spec.at("entries"));
    out.build = [d](Index) { return OperatorInput{OperatorSpec::diagonal(d), {}}; };
    return out;
  }
  if (kind == "preset") {
    const std::string name = spec.at("name").get<std::string>();
    std::vector<Complex> lambdas = sequence_from_json(spec);
    if (name == "carleson") {
      out.build = [lambdas](Index) {
        return OperatorInput{instances::carleson_diag(lambdas), {}};
      };
      return out;
    }
    if (name == "tn") {
      const Index n = spec.value("n", 3);
      out.build = [n, lambdas](Index) {
        return OperatorInput{instances::head_multiplicity_diag(n, lambdas), {}};
      };
      return out;
    }
    if (name == "noncontraction") {
      out.build = [lambdas](Index) {
        return OperatorInput{instances::stable_non_contraction(lambdas), {}};
      };
      return out;
    }
    fail(ErrorCode::InvalidArgument, "unknown preset '" + name + "'");
  }
  if (kind == "blaschke-model") {
    MatrixInner q = matrix_inner_from_json(spec);
    out.inner_function = q;
    out.build = [q](Index cutoff) {
      hardy::TruncHardy h{q.dim(), cutoff};
      hardy::ModelSpace n = hardy::model_space(q, h);
      return OperatorInput{hardy::compression(n), q};
    };
    return out;
  }
  fail(ErrorCode::InvalidArgument, "unknown operator kind '" + kind + "'");
}

std::string mat_to_csv(const Mat& m) {
  std::ostringstream os;
  os.precision(17);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ',';
      os << '"' << m(i, j).real() << ',' << m(i, j).imag() << '"';
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace dynframe::serialize
