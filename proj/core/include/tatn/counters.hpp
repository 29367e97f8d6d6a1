#pragma once

#include <cstddef>
#include <cstdint>

namespace tatn {

/// Element-granular ledger of simulated HBM traffic, FLOPs and peak on-chip
/// residency. Counts are monotonically non-decreasing during a run. One
/// counter belongs to one run context; results from parallel runs are
/// combined with merge().
struct AccessCounter {
  std::uint64_t hbm_read_elems = 0;
  std::uint64_t hbm_write_elems = 0;
  std::uint64_t flops = 0;
  std::uint64_t peak_resident_elems = 0;

  std::uint64_t total_accesses() const { return hbm_read_elems + hbm_write_elems; }

  /// Associative sum: traffic and FLOPs add, peaks take the max.
  void merge(const AccessCounter& other);
};

/// Simulated two-level hierarchy: SRAM of m_capacity elements in front of a
/// counted HBM. element_bytes only scales byte-denominated reports (default 2,
/// a half-precision element); all arithmetic stays 64-bit.
class MemoryModel {
 public:
  explicit MemoryModel(std::size_t m_capacity, std::uint32_t element_bytes = 2);

  std::size_t m_capacity() const { return m_capacity_; }
  std::uint32_t element_bytes() const { return element_bytes_; }

  AccessCounter& counter() { return counter_; }
  const AccessCounter& counter() const { return counter_; }

  void charge_read(std::uint64_t elems) { counter_.hbm_read_elems += elems; }
  void charge_write(std::uint64_t elems) { counter_.hbm_write_elems += elems; }
  void charge_flops(std::uint64_t n) { counter_.flops += n; }

  /// SRAM residency tracking. acquire/release bracket the lifetime of an
  /// on-chip buffer; the high-water mark lands in counter().peak_resident_elems.
  void acquire(std::size_t elems);
  void release(std::size_t elems);
  std::size_t resident() const { return resident_; }

  /// RAII residency bracket.
  class Lease {
   public:
    Lease(MemoryModel& mem, std::size_t elems) : mem_(&mem), elems_(elems) {
      mem_->acquire(elems_);
    }
    ~Lease() {
      if (mem_) mem_->release(elems_);
    }
    Lease(const Lease&) = delete;
    Lease& operator=(const Lease&) = delete;
    Lease(Lease&& other) noexcept : mem_(other.mem_), elems_(other.elems_) {
      other.mem_ = nullptr;
    }
    Lease& operator=(Lease&&) = delete;

   private:
    MemoryModel* mem_;
    std::size_t elems_;
  };

  Lease lease(std::size_t elems) { return Lease(*this, elems); }

 private:
  std::size_t m_capacity_;
  std::uint32_t element_bytes_;
  std::size_t resident_ = 0;
  AccessCounter counter_;
};

}  // namespace tatn
