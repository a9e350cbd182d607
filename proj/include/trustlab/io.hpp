#pragma once

#include <string>
#include <vector>

#include "trustlab/sim.hpp"

namespace trustlab {

// Config and artifact serialization. Every output embeds the originating
// config and the build version string. CSV uses '.' decimal, ',' separator,
// a header row and LF line endings.

SimConfig parse_config_text(const std::string& text);
SimConfig load_config_file(const std::string& path);
std::string config_json_text(const SimConfig& cfg);

// Columns: round,epoch,a,b,s,s0,s1,p0_raw,p1_raw,p0,p1,b0,b1,tau0,tau1,
// q0,q1,w0_after,w1_after,reported_p,flag. flag is a bitmask:
// 1 = violation (-rho report), 2 = clamped report, 4 = solver did not
// converge. Missing broadcasts serialize as empty fields.
void write_transcript_csv(const std::string& path, const SimulationTranscript& t);

std::string summary_json_text(const SimulationTranscript& t, const std::vector<int>& h);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

std::string format_double(double v);  // shortest exact round-trip

}  // namespace trustlab
