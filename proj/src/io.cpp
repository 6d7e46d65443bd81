//---------------------------------------------------------------------------//
// Copyright 2026 the qbayes developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "qbayes/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qbayes::io {

namespace {

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open file: " + path);
  }
  nlohmann::json j;
  in >> j;
  return j;
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "csv") {
    return Format::Csv;
  }
  if (name == "json") {
    return Format::Json;
  }
  throw std::invalid_argument("unknown output format: " + name);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

spin::SpinRecord read_spin_record(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("spin record: expected a JSON object");
  }
  static const struct {
    const char* key;
    spin::Axis axis;
    int sign;
  } fields[] = {
      {"x_plus", spin::Axis::X, +1}, {"x_minus", spin::Axis::X, -1},
      {"y_plus", spin::Axis::Y, +1}, {"y_minus", spin::Axis::Y, -1},
      {"z_plus", spin::Axis::Z, +1}, {"z_minus", spin::Axis::Z, -1},
  };
  spin::SpinRecord record;
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const auto& f : fields) {
      if (key == f.key) {
        if (!value.is_number_integer() ||
            (value.is_number_integer() && !value.is_number_unsigned() &&
             value.get<std::int64_t>() < 0)) {
          throw std::invalid_argument("spin record: " + key +
                                      " must be a non-negative integer");
        }
        record.at(f.axis, f.sign) = value.get<std::uint64_t>();
        known = true;
        break;
      }
    }
    if (!known) {
      throw std::invalid_argument("spin record: unknown key " + key);
    }
  }
  return record;
}

spin::SpinRecord read_spin_record_file(const std::string& path) {
  return read_spin_record(load_json_file(path));
}

nlohmann::json spin_record_to_json(const spin::SpinRecord& record) {
  return nlohmann::json{
      {"x_plus", record.at(spin::Axis::X, +1)},
      {"x_minus", record.at(spin::Axis::X, -1)},
      {"y_plus", record.at(spin::Axis::Y, +1)},
      {"y_minus", record.at(spin::Axis::Y, -1)},
      {"z_plus", record.at(spin::Axis::Z, +1)},
      {"z_minus", record.at(spin::Axis::Z, -1)},
  };
}

laser::DetectionHistory read_history(const nlohmann::json& j) {
  if (!j.is_array()) {
    throw std::invalid_argument("history: expected a JSON array");
  }
  std::vector<laser::DetectionEvent> events;
  events.reserve(j.size());
  for (const auto& entry : j) {
    if (!entry.is_object()) {
      throw std::invalid_argument("history: entries must be objects");
    }
    laser::DetectionEvent event;
    for (const auto& [key, value] : entry.items()) {
      if (key == "time") {
        event.time = value.get<double>();
      } else if (key == "m_c") {
        event.m_c = value.get<std::uint64_t>();
      } else if (key == "m_d") {
        event.m_d = value.get<std::uint64_t>();
      } else {
        throw std::invalid_argument("history: unknown key " + key);
      }
    }
    events.push_back(event);
  }
  return laser::DetectionHistory(std::move(events));
}

laser::DetectionHistory read_history_file(const std::string& path) {
  if (has_suffix(path, ".json")) {
    return read_history(load_json_file(path));
  }
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open file: " + path);
  }
  std::vector<laser::DetectionEvent> events;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::istringstream row(line);
    std::string t_str, c_str, d_str;
    if (!std::getline(row, t_str, ',') || !std::getline(row, c_str, ',') ||
        !std::getline(row, d_str)) {
      throw std::invalid_argument("history CSV: malformed row: " + line);
    }
    try {
      events.push_back({std::stod(t_str),
                        static_cast<std::uint64_t>(std::stoull(c_str)),
                        static_cast<std::uint64_t>(std::stoull(d_str))});
    } catch (const std::exception&) {
      if (first) {
        first = false;
        continue;  // header line
      }
      throw std::invalid_argument("history CSV: malformed row: " + line);
    }
    first = false;
  }
  return laser::DetectionHistory(std::move(events));
}

nlohmann::json history_to_json(const laser::DetectionHistory& history) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& event : history.events()) {
    j.push_back({{"time", event.time}, {"m_c", event.m_c}, {"m_d", event.m_d}});
  }
  return j;
}

void write_phase_posterior(std::ostream& out,
                           const laser::PhasePosterior& posterior,
                           Format format) {
  if (format == Format::Csv) {
    out << "phi,density\n";
    for (std::size_t k = 0; k < posterior.grid.node_count(); ++k) {
      out << format_double(posterior.grid.node(k)) << ','
          << format_double(posterior.density[k]) << '\n';
    }
    return;
  }
  nlohmann::json j;
  j["node_count"] = posterior.grid.node_count();
  auto& phi = j["phi"] = nlohmann::json::array();
  auto& density = j["density"] = nlohmann::json::array();
  for (std::size_t k = 0; k < posterior.grid.node_count(); ++k) {
    phi.push_back(posterior.grid.node(k));
    density.push_back(posterior.density[k]);
  }
  out << j.dump(2) << '\n';
}

void write_count_distribution(std::ostream& out,
                              const laser::CountDistribution& dist,
                              Format format) {
  if (format == Format::Csv) {
    out << "count,probability\n";
    for (std::size_t n = 0; n < dist.probabilities.size(); ++n) {
      out << n << ',' << format_double(dist.probabilities[n]) << '\n';
    }
    out << "tail," << format_double(dist.tail_bound) << '\n';
    return;
  }
  nlohmann::json j;
  j["probabilities"] = dist.probabilities;
  j["tail_bound"] = dist.tail_bound;
  out << j.dump(2) << '\n';
}

void write_bloch_posterior(std::ostream& out,
                           const spin::PosteriorDensity& posterior,
                           Format format) {
  if (format == Format::Csv) {
    out << "x,y,z,weight,density\n";
    for (const auto& node : posterior.nodes) {
      out << format_double(node.point.x) << ',' << format_double(node.point.y)
          << ',' << format_double(node.point.z) << ','
          << format_double(node.weight) << ',' << format_double(node.density)
          << '\n';
    }
    return;
  }
  nlohmann::json j = nlohmann::json::array();
  for (const auto& node : posterior.nodes) {
    j.push_back({{"x", node.point.x},
                 {"y", node.point.y},
                 {"z", node.point.z},
                 {"weight", node.weight},
                 {"density", node.density}});
  }
  out << j.dump(2) << '\n';
}

}  // namespace qbayes::io
