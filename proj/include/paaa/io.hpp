#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "paaa/lsq.hpp"

namespace paaa
{
/// Malformed input file; the message names the offending line or field.
class FormatError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Shortest decimal string that parses back to exactly `x`.
std::string format_real(Real x);

/// Sample CSV: header z1_re[,z1_im],...,zd_re[,zd_im],f_re[,f_im] in any
/// column order; missing *_im columns read as 0. Duplicate points are errors.
SampleSet read_samples_csv(std::istream &in);
SampleSet load_samples(const std::filesystem::path &path);
void write_samples_csv(std::ostream &out, const SampleSet &samples);
void save_samples(const SampleSet &samples, const std::filesystem::path &path);

/// Points-only CSV (f columns ignored if present). Returns K x d.
CMatrix read_points_csv(std::istream &in);
CMatrix load_points(const std::filesystem::path &path);

/// Model file, version "1":
/// {"version":"1","d":d,"nodes":[[[re,im],...],...],"alpha":[[re,im],...],
///  "beta":[[re,im],...],"meta":{...}}
nlohmann::json model_to_json(const BarycentricModel &model, const nlohmann::json &meta = nullptr);
BarycentricModel model_from_json(const nlohmann::json &doc);
void save_model(const BarycentricModel &model, const std::filesystem::path &path, const nlohmann::json &meta = nullptr);
BarycentricModel load_model(const std::filesystem::path &path);
} // namespace paaa
