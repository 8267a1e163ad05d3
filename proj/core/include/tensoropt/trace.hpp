#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

namespace tensoropt {

/// One inner (Bregman gradient) iteration.
struct InnerTraceRow {
  int k = 0;
  double model_grad_norm = 0.0;  // G_{k+1}
  double step_norm = 0.0;        // ||y_{k+1} - x||
  double slow_bound = 0.0;       // bound that G_{k+1}^4 is compared against
};

struct AccelTraceExtra {
  double A = 0.0;
  double a = 0.0;
  double gamma = 0.0;
  double v_dist = 0.0;  // ||v_t - x_0||
  double phi_star = 0.0;
};

/// One trial of an outer loop: level i at iteration t.
struct OuterTraceRow {
  int t = 0;
  int level = 0;
  double regularization = 0.0;  // 2^i M_t
  bool alpha = false;
  int inner_iterations = 0;
  std::optional<double> f_plus;  // only evaluated when the decrease test runs
  double grad_norm_plus = 0.0;
  bool accepted = false;
  std::optional<AccelTraceExtra> accel;
};

class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void inner(const InnerTraceRow& row) = 0;
  virtual void outer(const OuterTraceRow& row) = 0;
};

/// Streams one JSON object per line, tagged with "kind": "inner" | "outer".
class JsonLinesTraceSink final : public TraceSink {
 public:
  explicit JsonLinesTraceSink(std::ostream& out) : out_(out) {}
  void inner(const InnerTraceRow& row) override;
  void outer(const OuterTraceRow& row) override;

 private:
  std::ostream& out_;
};

class CollectingTraceSink final : public TraceSink {
 public:
  void inner(const InnerTraceRow& row) override { inner_rows.push_back(row); }
  void outer(const OuterTraceRow& row) override { outer_rows.push_back(row); }

  std::vector<InnerTraceRow> inner_rows;
  std::vector<OuterTraceRow> outer_rows;
};

}  // namespace tensoropt
