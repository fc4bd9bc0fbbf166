#include "summa/continuation/evaluator.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "detail/kernel.hpp"
#include "summa/error.hpp"
#include "summa/seqcore/descriptor_json.hpp"
#include "summa/specfun/generating.hpp"

namespace summa::cont {

std::string_view target_name(Target t) { return t == Target::forward ? "forward" : "inverse"; }

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::closed_form: return "closed_form";
    case Strategy::power_sum_recursion: return "power_sum_recursion";
    case Strategy::exp_poly_recursion: return "exp_poly_recursion";
    case Strategy::q_functional: return "q_functional";
    case Strategy::direct_only: return "direct_only";
  }
  return "unknown";
}

Target parse_target(std::string_view s) {
  if (s == "forward") return Target::forward;
  if (s == "inverse") return Target::inverse;
  fail(ErrorCode::InvalidArgument, "target must be forward or inverse");
}

Target flip(Target t) { return t == Target::forward ? Target::inverse : Target::forward; }

namespace {

struct Key {
  std::uint64_t re, im;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    return std::hash<std::uint64_t>{}(k.re * 0x9E3779B97F4A7C15ull ^ k.im);
  }
};

}  // namespace

struct ContinuationEvaluator::Impl {
  Target target = Target::forward;
  std::string label;
  double cut = 1.0;
  Strategy strategy = Strategy::closed_form;
  std::function<Complex(Complex)> f;
  // partial-sum coefficients: either a descriptor or a custom function
  std::optional<seq::SequenceDescriptor> desc;
  std::function<Complex(std::size_t)> coeff;

  mutable std::shared_mutex mu;
  mutable std::unordered_map<Key, Complex, KeyHash> memo;
};

ContinuationEvaluator ContinuationEvaluator::create(const seq::SequenceDescriptor& d, Target target,
                                                    const EvaluatorOptions& opts) {
  auto kernel = detail::build_kernel(d, target, opts);
  auto impl = std::make_shared<Impl>();
  impl->target = target;
  impl->label = std::string(target_name(target)) + ":" + seq::canonical_string(d);
  impl->cut = kernel->cut();
  impl->strategy = kernel->strategy();
  impl->f = [kernel](Complex z) { return kernel->eval(z); };
  impl->desc = d;
  return ContinuationEvaluator(std::move(impl));
}

ContinuationEvaluator ContinuationEvaluator::custom(std::string label, std::function<Complex(Complex)> f,
                                                    double cut_radius, std::function<Complex(std::size_t)> coeff) {
  if (!(cut_radius > 0.0)) fail(ErrorCode::InvalidArgument, "cut radius must be positive");
  auto impl = std::make_shared<Impl>();
  impl->label = std::move(label);
  impl->cut = cut_radius;
  impl->strategy = Strategy::closed_form;
  impl->f = std::move(f);
  impl->coeff = std::move(coeff);
  return ContinuationEvaluator(std::move(impl));
}

Complex ContinuationEvaluator::operator()(Complex z) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) fail(ErrorCode::InvalidArgument, "non-finite argument");
  specfun::check_off_cut(z, impl_->cut);
  const Key key{std::bit_cast<std::uint64_t>(z.real()), std::bit_cast<std::uint64_t>(z.imag())};
  {
    std::shared_lock lock(impl_->mu);
    auto it = impl_->memo.find(key);
    if (it != impl_->memo.end()) return it->second;
  }
  Complex v = impl_->f(z);
  std::unique_lock lock(impl_->mu);
  return impl_->memo.emplace(key, v).first->second;
}

Complex ContinuationEvaluator::partial_sum(Complex z, std::size_t terms) const {
  if (impl_->desc) {
    seq::EvalOptions eo;
    eo.n_max = std::max(eo.n_max, terms);
    Complex acc = 0.0;
    const double lz = z == Complex(0.0) ? 0.0 : std::log(std::abs(z));
    const double th = std::arg(z);
    for (std::size_t n = 0; n < terms; ++n) {
      if (z == Complex(0.0) && n > 0) break;
      double l = seq::seq_log_eval(*impl_->desc, n, eo);
      if (impl_->target == Target::inverse) l = -l;
      double nn = static_cast<double>(n);
      acc += std::polar(std::exp(l + (n ? nn * lz : 0.0)), nn * th);
    }
    return acc;
  }
  if (!impl_->coeff) fail(ErrorCode::EvaluatorUnavailable, "no coefficients for partial sums");
  Complex acc = 0.0, zn = 1.0;
  for (std::size_t n = 0; n < terms; ++n) {
    acc += impl_->coeff(n) * zn;
    zn *= z;
  }
  return acc;
}

Target ContinuationEvaluator::target() const { return impl_->target; }
Strategy ContinuationEvaluator::strategy() const { return impl_->strategy; }
double ContinuationEvaluator::cut_radius() const { return impl_->cut; }
double ContinuationEvaluator::base_disc_radius() const { return impl_->cut / 2.0; }
const std::string& ContinuationEvaluator::label() const { return impl_->label; }

std::size_t ContinuationEvaluator::memo_size() const {
  std::shared_lock lock(impl_->mu);
  return impl_->memo.size();
}

}  // namespace summa::cont
