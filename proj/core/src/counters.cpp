#include "tatn/counters.hpp"

#include <algorithm>
#include <stdexcept>

namespace tatn {

void AccessCounter::merge(const AccessCounter& other) {
  hbm_read_elems += other.hbm_read_elems;
  hbm_write_elems += other.hbm_write_elems;
  flops += other.flops;
  peak_resident_elems = std::max(peak_resident_elems, other.peak_resident_elems);
}

MemoryModel::MemoryModel(std::size_t m_capacity, std::uint32_t element_bytes)
    : m_capacity_(m_capacity), element_bytes_(element_bytes) {
  if (m_capacity_ < 1) throw std::invalid_argument("MemoryModel: m_capacity must be >= 1");
  if (element_bytes_ < 1)
    throw std::invalid_argument("MemoryModel: element_bytes must be >= 1");
}

void MemoryModel::acquire(std::size_t elems) {
  resident_ += elems;
  if (resident_ > counter_.peak_resident_elems) counter_.peak_resident_elems = resident_;
}

void MemoryModel::release(std::size_t elems) {
  resident_ -= std::min(resident_, elems);
}

}  // namespace tatn
