#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace lakebloom::io {

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

struct ManifestEntry {
  std::string path;  // relative to the output directory
  std::string sha256;
  std::size_t bytes = 0;
};

/// Owns the files one run writes into an output directory.
///
/// Each file goes to a temporary name first and is renamed into place. Unless
/// commit() is called, the destructor removes every file written through this
/// object, so a failed run leaves no partial outputs behind.
class OutputDirectory {
 public:
  explicit OutputDirectory(std::filesystem::path dir);
  ~OutputDirectory();
  OutputDirectory(const OutputDirectory&) = delete;
  OutputDirectory& operator=(const OutputDirectory&) = delete;

  /// `name` must be a plain relative path without "..". Throws Error on failure.
  void write(const std::string& name, std::string_view content);

  /// Writes manifest.json listing every file written so far, sorted by path.
  void write_manifest();

  /// Writes a file that is not listed in the manifest (e.g. run metadata).
  void write_unlisted(const std::string& name, std::string_view content);

  void commit() { committed_ = true; }
  void remove_all() noexcept;

  const std::vector<ManifestEntry>& entries() const { return entries_; }
  const std::filesystem::path& path() const { return dir_; }

 private:
  void put(const std::string& name, std::string_view content);

  std::filesystem::path dir_;
  std::vector<ManifestEntry> entries_;
  std::vector<std::filesystem::path> written_;
  bool committed_ = false;
};

}  // namespace lakebloom::io
