#include "syncorr/pipeline/output.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <memory>

#include "syncorr/error.hpp"
#include "syncorr/format.hpp"

namespace syncorr::pipeline {

namespace {

using Json = nlohmann::ordered_json;

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

Json fit_json(const FitResult& f, std::pair<double, double> range) {
  Json params = Json::object();
  if (f.log_scaled) {
    params[f.model == DecayModel::exponential ? "A" : "B"] = number(f.amplitude);
    params[f.model == DecayModel::exponential ? "lambda" : "alpha"] = number(f.exponent);
  } else {
    params[f.model == DecayModel::exponential ? "C" : "D"] = number(f.amplitude);
    params[f.model == DecayModel::exponential ? "mu" : "beta"] = number(f.exponent);
  }
  Json excluded = Json::array();
  for (const Point& p : f.excluded) excluded.push_back({number(p.r), number(p.y)});
  Json out;
  out["series"] = f.series;
  out["model"] = std::string(to_string(f.model));
  out["mode"] = f.log_scaled ? "log" : "linear";
  out["params"] = params;
  out["chi2_nu"] = number(f.chi2_nu);
  out["n_points"] = f.n_points;
  out["range"] = {number(range.first), number(range.second)};
  out["excluded_points"] = excluded;
  if (!f.log_scaled) {
    out["iterations"] = f.iterations;
    out["converged"] = f.converged;
  }
  return out;
}

std::string hex(const unsigned char* bytes, unsigned int length) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[bytes[i] >> 4];
    out += kHex[bytes[i] & 0xf];
  }
  return out;
}

}  // namespace

void write_estimates_csv(std::ostream& out, const std::vector<EstimateRow>& rows) {
  out << "distance,distance_kind,estimator,n_data,value_nats,source,flag\n";
  for (const EstimateRow& r : rows) {
    out << r.distance << ',' << to_string(r.kind) << ',' << to_string(r.estimator) << ','
        << r.n_data << ',' << (r.value ? format_double(*r.value) : "") << ',' << r.source << ','
        << r.flag << '\n';
  }
}

std::string fit_report_json(const FitReport& report) {
  Json fits = Json::array();
  Json selection = Json::array();
  for (const SeriesFit& s : report.fits) {
    fits.push_back(fit_json(s.exponential, s.range));
    fits.push_back(fit_json(s.power_law, s.range));
    Json sel;
    sel["series"] = s.exponential.series;
    sel["winner"] = s.selection.winner ? Json(std::string(to_string(*s.selection.winner)))
                                       : Json("inconclusive");
    sel["chi2_nu_exponential"] = number(s.selection.chi2_exponential);
    sel["chi2_nu_power_law"] = number(s.selection.chi2_power_law);
    sel["ratio"] = number(s.selection.ratio());
    selection.push_back(sel);
  }
  Json skipped = Json::array();
  for (const auto& [series, reason] : report.skipped) {
    skipped.push_back({{"series", series}, {"reason", reason}});
  }
  Json root;
  root["fits"] = fits;
  root["selection"] = selection;
  root["skipped"] = skipped;
  return root.dump(2) + "\n";
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  return hex(digest.data(), length);
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 initialisation failed");
  }
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &length);
  return hex(digest.data(), length);
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("failed writing " + path.string());
}

void Manifest::add(std::string key, std::string value) {
  lines_.emplace_back(std::move(key), std::move(value));
}

std::string Manifest::text() const {
  std::string out;
  for (const auto& [k, v] : lines_) out += k + " = " + v + "\n";
  return out;
}

}  // namespace syncorr::pipeline
