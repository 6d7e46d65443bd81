//---------------------------------------------------------------------------//
// Copyright 2026 the qbayes developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "qbayes/laser.hpp"
#include "qbayes/spin.hpp"

namespace qbayes::io {

enum class Format { Csv, Json };

Format parse_format(const std::string& name);

//! "%.17g" rendering, lossless on round trip.
std::string format_double(double v);

// Spin records: JSON object with keys x_plus, x_minus, y_plus, y_minus,
// z_plus, z_minus; missing keys default to zero, unknown keys are
// rejected.
spin::SpinRecord read_spin_record(const nlohmann::json& j);
spin::SpinRecord read_spin_record_file(const std::string& path);
nlohmann::json spin_record_to_json(const spin::SpinRecord& record);

// Detection histories: JSON array of {time, m_c, m_d}, or CSV rows
// time,m_c,m_d (an optional header line is skipped).
laser::DetectionHistory read_history(const nlohmann::json& j);
laser::DetectionHistory read_history_file(const std::string& path);
nlohmann::json history_to_json(const laser::DetectionHistory& history);

void write_phase_posterior(std::ostream& out,
                           const laser::PhasePosterior& posterior,
                           Format format);
void write_count_distribution(std::ostream& out,
                              const laser::CountDistribution& dist,
                              Format format);
void write_bloch_posterior(std::ostream& out,
                           const spin::PosteriorDensity& posterior,
                           Format format);

}  // namespace qbayes::io
