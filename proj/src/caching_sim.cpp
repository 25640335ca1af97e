#include "pdakit/caching_sim.hpp"

#include <algorithm>
#include <cstring>
#include <unordered_map>

#include "pdakit/errors.hpp"

namespace pdakit {

PacketStore::PacketStore(std::size_t files, std::size_t packets, std::size_t packet_size,
                         std::uint64_t seed)
    : files_(files), packets_(packets), packet_size_(packet_size), seed_(seed) {
  if (files == 0 || packets == 0 || packet_size == 0)
    throw DomainError("a packet store needs N >= 1, F >= 1 and packet_size >= 1");
  bytes_.resize(files * packets * packet_size);
  // Raw engine output, not a distribution, so the bytes are identical on
  // every standard library.
  std::mt19937_64 rng(seed);
  std::size_t i = 0;
  while (i < bytes_.size()) {
    std::uint64_t word = rng();
    for (int b = 0; b < 8 && i < bytes_.size(); ++b, ++i) {
      bytes_[i] = static_cast<std::uint8_t>(word & 0xff);
      word >>= 8;
    }
  }
}

std::span<const std::uint8_t> PacketStore::packet(std::size_t file, std::size_t row) const {
  return std::span<const std::uint8_t>(bytes_).subspan((file * packets_ + row) * packet_size_,
                                                       packet_size_);
}

std::span<const std::uint8_t> PacketStore::file(std::size_t file) const {
  return std::span<const std::uint8_t>(bytes_).subspan(file * packets_ * packet_size_,
                                                       packets_ * packet_size_);
}

DemandVector::DemandVector(std::vector<std::size_t> file_ids, std::size_t files)
    : ids_(std::move(file_ids)) {
  for (std::size_t k = 0; k < ids_.size(); ++k) {
    if (ids_[k] < 1 || ids_[k] > files) {
      throw DomainError("demand of user " + std::to_string(k + 1) + " is file " +
                        std::to_string(ids_[k]) + ", outside [1," + std::to_string(files) + "]");
    }
  }
}

DemandVector DemandVector::uniform(std::size_t users, std::size_t file_id, std::size_t files) {
  return DemandVector(std::vector<std::size_t>(users, file_id), files);
}

DemandVector DemandVector::random(std::size_t users, std::size_t files, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(1, files);
  std::vector<std::size_t> ids(users);
  for (auto& id : ids) id = pick(rng);
  return DemandVector(std::move(ids), files);
}

std::string to_string(const DemandVector& demand) {
  std::string out;
  for (std::size_t k = 0; k < demand.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(demand.ids()[k]);
  }
  return out;
}

CacheState::CacheState(const PdaArray& arr, std::size_t files, std::size_t packet_size)
    : files_(files),
      packet_size_(packet_size),
      holds_(arr.cols(), std::vector<bool>(arr.rows(), false)),
      rows_(arr.cols()) {
  for (std::size_t j = 0; j < arr.rows(); ++j) {
    const auto row = arr.row(j);
    for (std::size_t k = 0; k < arr.cols(); ++k) {
      if (!row[k].is_star()) continue;
      holds_[k][j] = true;
      rows_[k].push_back(j);
    }
  }
}

bool CacheState::contains(std::size_t user, std::size_t file, std::size_t row) const {
  return user < holds_.size() && file < files_ && row < holds_[user].size() && holds_[user][row];
}

CacheState place(const PdaArray& arr, const PacketStore& store) {
  if (store.packets() != arr.rows()) {
    throw DomainError("packet store splits files into " + std::to_string(store.packets()) +
                      " packets but the array has F = " + std::to_string(arr.rows()) + " rows");
  }
  return CacheState(arr, store.files(), store.packet_size());
}

std::size_t TransmissionLog::bytes_sent() const {
  std::size_t total = 0;
  for (const auto& tx : transmissions) total += tx.payload.size();
  return total;
}

namespace {

void xor_into(std::vector<std::uint8_t>& acc, std::span<const std::uint8_t> bytes) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] ^= bytes[i];
}

}  // namespace

TransmissionLog deliver(const PdaArray& arr, const PacketStore& store, const DemandVector& demand) {
  if (store.packets() != arr.rows())
    throw DomainError("packet store and array disagree on F");
  if (demand.size() != arr.cols()) {
    throw DomainError("demand has " + std::to_string(demand.size()) + " entries but K = " +
                      std::to_string(arr.cols()));
  }
  for (std::size_t k = 0; k < demand.size(); ++k) {
    if (demand.file_of(k) >= store.files())
      throw DomainError("demand of user " + std::to_string(k + 1) + " exceeds N");
  }

  const std::uint32_t symbols = arr.max_symbol();
  TransmissionLog log;
  log.transmissions.resize(symbols);
  for (std::uint32_t s = 0; s < symbols; ++s) {
    log.transmissions[s].symbol = s + 1;
    log.transmissions[s].payload.assign(store.packet_size(), 0);
  }
  for (std::size_t j = 0; j < arr.rows(); ++j) {
    const auto row = arr.row(j);
    for (std::size_t k = 0; k < arr.cols(); ++k) {
      if (row[k].is_star()) continue;
      auto& tx = log.transmissions[row[k].value() - 1];
      tx.terms.push_back(Term{k, j});
      xor_into(tx.payload, store.packet(demand.file_of(k), j));
    }
  }
  for (auto& tx : log.transmissions) std::sort(tx.terms.begin(), tx.terms.end());
  return log;
}

std::string format_transmission(const Transmission& tx) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out = "s=" + std::to_string(tx.symbol) + " terms=";
  for (std::size_t i = 0; i < tx.terms.size(); ++i) {
    if (i) out += ';';
    out += "(" + std::to_string(tx.terms[i].user + 1) + "," + std::to_string(tx.terms[i].row + 1) + ")";
  }
  out += " payload=";
  for (auto byte : tx.payload) {
    out += kHex[byte >> 4];
    out += kHex[byte & 0xf];
  }
  return out;
}

std::string format_trace(const TransmissionLog& log) {
  std::string out;
  for (const auto& tx : log.transmissions) out += format_transmission(tx) + '\n';
  return out;
}

std::uint64_t content_hash(std::span<const std::uint8_t> bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

DecodeReport decode_and_verify(const PdaArray& arr, const PacketStore& store,
                               const DemandVector& demand, const TransmissionLog& log) {
  const CacheState cache = place(arr, store);
  if (demand.size() != arr.cols()) throw DomainError("demand length differs from K");

  std::unordered_map<std::uint32_t, const Transmission*> by_symbol;
  for (const auto& tx : log.transmissions) by_symbol[tx.symbol] = &tx;

  const std::size_t size = store.packet_size();
  DecodeReport report;
  report.success = true;
  std::vector<std::uint8_t> decoded(store.packets() * size);
  std::vector<std::uint8_t> packet(size);

  for (std::size_t k = 0; k < arr.cols(); ++k) {
    UserDecode user;
    user.user = k;
    user.file = demand.file_of(k);
    std::fill(decoded.begin(), decoded.end(), 0);

    for (std::size_t j = 0; j < arr.rows(); ++j) {
      const Cell cell = arr.at(j, k);
      auto out = decoded.begin() + static_cast<std::ptrdiff_t>(j * size);
      if (cell.is_star()) {
        if (!cache.contains(k, user.file, j)) {
          user.missing.push_back({0, Term{k, j}});
          continue;
        }
        const auto bytes = store.packet(user.file, j);
        std::copy(bytes.begin(), bytes.end(), out);
        continue;
      }

      const auto found = by_symbol.find(cell.value());
      if (found == by_symbol.end()) {
        user.missing.push_back({cell.value(), Term{k, j}});
        continue;
      }
      const Transmission& tx = *found->second;
      if (tx.payload.size() != size ||
          std::find(tx.terms.begin(), tx.terms.end(), Term{k, j}) == tx.terms.end()) {
        user.missing.push_back({cell.value(), Term{k, j}});
        continue;
      }
      packet = tx.payload;
      for (const Term& other : tx.terms) {
        if (other.user == k && other.row == j) continue;
        const std::size_t file = demand.file_of(other.user);
        if (!cache.contains(k, file, other.row)) {
          user.missing.push_back({cell.value(), other});
          continue;
        }
        xor_into(packet, store.packet(file, other.row));
      }
      std::copy(packet.begin(), packet.end(), out);
    }

    user.decoded_hash = content_hash(decoded);
    const auto original = store.file(user.file);
    user.original_hash = content_hash(original);
    user.ok = user.missing.empty() && std::equal(decoded.begin(), decoded.end(), original.begin());
    report.success = report.success && user.ok;
    report.per_user.push_back(std::move(user));
  }
  return report;
}

}  // namespace pdakit
