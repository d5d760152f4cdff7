#include "arenstorf/run_state.hpp"

#include <zlib.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "arenstorf/checkpoint_csv.hpp"
#include "arenstorf/error.hpp"
#include "json.hpp"

namespace arenstorf::io {

using nlohmann::json;

std::uint32_t crc32(std::string_view bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths
  while (!bytes.empty()) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size(), 1u << 30));
    crc = ::crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), chunk);
    bytes.remove_prefix(chunk);
  }
  return static_cast<std::uint32_t>(crc);
}

namespace {

std::string crc_hex(std::uint32_t crc) {
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", crc);
  return buf;
}

json payload_of(const RunState& state) {
  json emitted = json::array();
  for (const auto& c : state.progress.emitted) {
    emitted.push_back({{"N", c.n},
                       {"sum_bits", double_to_hex(c.sum.value)},
                       {"compensation_bits", double_to_hex(c.sum.compensation)}});
  }
  return {
      {"format_version", state.format_version},
      {"segment_size", state.segment_size},
      {"next_lo", state.progress.next_lo},
      {"sum_bits", double_to_hex(state.progress.sum.value)},
      {"compensation_bits", double_to_hex(state.progress.sum.compensation)},
      {"pair_count", state.progress.pair_count},
      {"schedule",
       {{"start_exponent", state.schedule.start_exponent}, {"end_exponent", state.schedule.end_exponent}}},
      {"emitted", std::move(emitted)},
  };
}

}  // namespace

std::string serialize_state(const RunState& state) {
  const json payload = payload_of(state);
  const json doc = {{"crc32", crc_hex(crc32(payload.dump()))}, {"payload", payload}};
  return doc.dump(2) + "\n";
}

RunState deserialize_state(std::string_view text, double c2) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::corrupt_state, std::string("state file is not valid JSON: ") + e.what());
  }

  RunState state;
  try {
    const json& payload = doc.at("payload");
    const std::string stored_crc = doc.at("crc32").get<std::string>();
    if (stored_crc != crc_hex(crc32(payload.dump()))) {
      fail(ErrorCode::corrupt_state, "state checksum mismatch");
    }
    state.format_version = payload.at("format_version").get<int>();
    if (state.format_version != kStateFormatVersion) {
      fail(ErrorCode::version_mismatch, "state format version " + std::to_string(state.format_version) +
                                            ", expected " + std::to_string(kStateFormatVersion));
    }
    state.segment_size = payload.at("segment_size").get<std::uint64_t>();
    state.progress.next_lo = payload.at("next_lo").get<std::uint64_t>();
    state.progress.sum.value = double_from_hex(payload.at("sum_bits").get<std::string>());
    state.progress.sum.compensation = double_from_hex(payload.at("compensation_bits").get<std::string>());
    state.progress.pair_count = payload.at("pair_count").get<std::uint64_t>();
    state.schedule.start_exponent = payload.at("schedule").at("start_exponent").get<int>();
    state.schedule.end_exponent = payload.at("schedule").at("end_exponent").get<int>();
    for (const json& item : payload.at("emitted")) {
      CompensatedSum sum{double_from_hex(item.at("sum_bits").get<std::string>()),
                         double_from_hex(item.at("compensation_bits").get<std::string>())};
      state.progress.emitted.push_back(make_checkpoint(item.at("N").get<std::uint64_t>(), sum, c2));
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::corrupt_state, std::string("malformed state file: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse || e.code() == ErrorCode::domain) {
      fail(ErrorCode::corrupt_state, std::string("malformed state file: ") + e.what());
    }
    throw;
  }

  try {
    state.schedule.validate();
  } catch (const Error& e) {
    fail(ErrorCode::corrupt_state, std::string("state schedule invalid: ") + e.what());
  }
  const auto& emitted = state.progress.emitted;
  if (emitted.size() > state.schedule.size()) fail(ErrorCode::corrupt_state, "too many emitted checkpoints");
  for (std::size_t i = 0; i < emitted.size(); ++i) {
    if (emitted[i].n != state.schedule.point(i) || emitted[i].n > state.progress.next_lo) {
      fail(ErrorCode::corrupt_state, "emitted checkpoints inconsistent with schedule and next_lo");
    }
  }
  return state;
}

void save_state(const std::filesystem::path& path, const RunState& state) {
  write_file_atomic(path, serialize_state(state));
}

RunState load_state(const std::filesystem::path& path, double c2) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open state file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_state(buf.str(), c2);
}

}  // namespace arenstorf::io
