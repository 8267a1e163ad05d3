#include "tensoropt/trace.hpp"

#include <json.hpp>
#include <ostream>

namespace tensoropt {

void JsonLinesTraceSink::inner(const InnerTraceRow& row) {
  nlohmann::json j = {{"kind", "inner"},
                      {"k", row.k},
                      {"G", row.model_grad_norm},
                      {"step_norm", row.step_norm},
                      {"slow_bound", row.slow_bound}};
  out_ << j.dump() << '\n';
}

void JsonLinesTraceSink::outer(const OuterTraceRow& row) {
  nlohmann::json j = {{"kind", "outer"},
                      {"t", row.t},
                      {"i", row.level},
                      {"M_level", row.regularization},
                      {"alpha", row.alpha},
                      {"inner_iters", row.inner_iterations},
                      {"grad_norm_plus", row.grad_norm_plus},
                      {"accepted", row.accepted}};
  j["f_plus"] = row.f_plus ? nlohmann::json(*row.f_plus) : nlohmann::json(nullptr);
  if (row.accel) {
    j["A"] = row.accel->A;
    j["a"] = row.accel->a;
    j["gamma"] = row.accel->gamma;
    j["v_dist"] = row.accel->v_dist;
    j["phi_star"] = row.accel->phi_star;
  }
  out_ << j.dump() << '\n';
}

}  // namespace tensoropt
