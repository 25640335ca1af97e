#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pdakit/pda.hpp"

namespace pdakit {

/// N files of F equal packets each, filled with bytes from a seeded
/// mt19937_64 so the whole library is reproducible from (shape, seed).
class PacketStore {
 public:
  PacketStore(std::size_t files, std::size_t packets, std::size_t packet_size,
              std::uint64_t seed);

  std::size_t files() const { return files_; }
  std::size_t packets() const { return packets_; }
  std::size_t packet_size() const { return packet_size_; }
  std::uint64_t seed() const { return seed_; }

  /// Zero-based file and packet index.
  std::span<const std::uint8_t> packet(std::size_t file, std::size_t row) const;
  std::span<const std::uint8_t> file(std::size_t file) const;

 private:
  std::size_t files_;
  std::size_t packets_;
  std::size_t packet_size_;
  std::uint64_t seed_;
  std::vector<std::uint8_t> bytes_;
};

/// User k requests file d_k. Entries are 1-based file ids as on the command
/// line; file_of() returns the zero-based index.
class DemandVector {
 public:
  DemandVector(std::vector<std::size_t> file_ids, std::size_t files);

  std::size_t size() const { return ids_.size(); }
  std::size_t file_of(std::size_t user) const { return ids_[user] - 1; }
  const std::vector<std::size_t>& ids() const { return ids_; }

  static DemandVector uniform(std::size_t users, std::size_t file_id, std::size_t files);
  static DemandVector random(std::size_t users, std::size_t files, std::mt19937_64& rng);

 private:
  std::vector<std::size_t> ids_;
};

std::string to_string(const DemandVector& demand);

/// What each user stores after placement: packet j of every file whenever
/// p[j][k] is a star. Bytes stay in the PacketStore; the cache records
/// membership, and the decoder may only read packets that are members.
class CacheState {
 public:
  CacheState(const PdaArray& arr, std::size_t files, std::size_t packet_size);

  std::size_t users() const { return holds_.size(); }
  bool contains(std::size_t user, std::size_t file, std::size_t row) const;
  const std::vector<std::size_t>& cached_rows(std::size_t user) const { return rows_[user]; }
  /// N * Z for a valid PDA.
  std::size_t packet_count(std::size_t user) const { return files_ * rows_[user].size(); }
  std::size_t byte_count(std::size_t user) const { return packet_count(user) * packet_size_; }

 private:
  std::size_t files_;
  std::size_t packet_size_;
  std::vector<std::vector<bool>> holds_;
  std::vector<std::vector<std::size_t>> rows_;
};

/// Throws DomainError when the store's packet count differs from the array's F.
CacheState place(const PdaArray& arr, const PacketStore& store);

/// One XOR'ed packet W[d_k][j] contributing to a broadcast.
struct Term {
  std::size_t user = 0;  // zero-based
  std::size_t row = 0;   // zero-based
  friend constexpr auto operator<=>(const Term&, const Term&) = default;
};

struct Transmission {
  std::uint32_t symbol = 0;
  std::vector<Term> terms;  // ascending user
  std::vector<std::uint8_t> payload;
};

struct TransmissionLog {
  std::vector<Transmission> transmissions;  // ascending symbol
  std::size_t bytes_sent() const;
};

/// One broadcast per symbol s = 1..S, payload = XOR of W[d_k][j] over every
/// cell p[j][k] = s.
TransmissionLog deliver(const PdaArray& arr, const PacketStore& store, const DemandVector& demand);

/// `s=<symbol> terms=(k,j);(k,j)... payload=<hex>` with one-based k and j.
std::string format_transmission(const Transmission& tx);
std::string format_trace(const TransmissionLog& log);

struct MissingPacket {
  std::uint32_t symbol = 0;
  Term needed;  // the term whose packet the user could not find in its cache
};

struct UserDecode {
  std::size_t user = 0;
  std::size_t file = 0;  // zero-based
  std::uint64_t decoded_hash = 0;
  std::uint64_t original_hash = 0;
  bool ok = false;
  std::vector<MissingPacket> missing;
};

struct DecodeReport {
  bool success = false;
  std::vector<UserDecode> per_user;
};

/// Every user rebuilds its requested file from its cache (star rows) and
/// from the broadcasts (non-star rows), cancelling the other terms of each
/// broadcast with packets it holds. Missing cache lookups are reported,
/// never skipped; they only occur when C3 is violated.
DecodeReport decode_and_verify(const PdaArray& arr, const PacketStore& store,
                               const DemandVector& demand, const TransmissionLog& log);

/// 64-bit FNV-1a, the content hash shown in decode reports.
std::uint64_t content_hash(std::span<const std::uint8_t> bytes);

}  // namespace pdakit
