#include "qumode/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace qm {

namespace {
std::mutex plan_mutex;
std::map<std::pair<int, int>, fftw_plan> plan_cache;

fftw_plan get_plan(int n, int sign) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(n, sign);
  auto it = plan_cache.find(key);
  if (it != plan_cache.end()) return it->second;
  // Plan on a scratch buffer; executed later on caller arrays via the
  // new-array interface (safe with FFTW_ESTIMATE | FFTW_UNALIGNED).
  std::vector<fftw_complex> scratch(n);
  fftw_plan p = fftw_plan_dft_1d(n, scratch.data(), scratch.data(), sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  plan_cache.emplace(key, p);
  return p;
}
}  // namespace

void fft(Eigen::VectorXcd& v, int sign) {
  const int n = static_cast<int>(v.size());
  if (n <= 1) return;
  fftw_plan p = get_plan(n, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
  auto* data = reinterpret_cast<fftw_complex*>(v.data());
  fftw_execute_dft(p, data, data);
}

}  // namespace qm
