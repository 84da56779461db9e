#include "bmx/jet.hpp"

#include <memory>
#include <mutex>

namespace bmx::detail {

const JetTables& JetTables::get(int order) {
  static std::mutex mu;
  static std::array<std::unique_ptr<JetTables>, 7> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[order]) cache[order] = std::make_unique<JetTables>(order);
  return *cache[order];
}

}  // namespace bmx::detail
