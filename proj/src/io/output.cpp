#include "lakebloom/io/output.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <memory>

#include "json.hpp"
#include "lakebloom/common/error.hpp"

namespace lakebloom::io {

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

OutputDirectory::OutputDirectory(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error("cannot create output directory '" + dir_.string() + "': " + ec.message());
}

OutputDirectory::~OutputDirectory() {
  if (!committed_) remove_all();
}

void OutputDirectory::put(const std::string& name, std::string_view content) {
  const std::filesystem::path rel(name);
  if (name.empty() || rel.is_absolute() ||
      std::any_of(rel.begin(), rel.end(), [](const auto& p) { return p == ".."; })) {
    throw Error("output name '" + name + "' must stay inside the output directory");
  }
  const auto target = dir_ / rel;
  const auto tmp = target.string() + ".tmp";
  std::error_code ec;
  std::filesystem::create_directories(target.parent_path(), ec);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
      std::filesystem::remove(tmp, ec);
      throw Error("cannot write '" + target.string() + "'");
    }
  }
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot move '" + target.string() + "' into place");
  }
  written_.push_back(target);
}

void OutputDirectory::write(const std::string& name, std::string_view content) {
  put(name, content);
  entries_.push_back({name, sha256_hex(content), content.size()});
}

void OutputDirectory::write_unlisted(const std::string& name, std::string_view content) {
  put(name, content);
}

void OutputDirectory::write_manifest() {
  auto sorted = entries_;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (const auto& e : sorted) {
    files.push_back({{"path", e.path}, {"sha256", e.sha256}, {"bytes", e.bytes}});
  }
  nlohmann::ordered_json doc;
  doc["files"] = files;
  put("manifest.json", doc.dump(2) + "\n");
}

void OutputDirectory::remove_all() noexcept {
  for (const auto& p : written_) {
    std::error_code ec;
    std::filesystem::remove(p, ec);
  }
  written_.clear();
  entries_.clear();
}

}  // namespace lakebloom::io
