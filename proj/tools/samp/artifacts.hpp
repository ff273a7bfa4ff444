#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace samptool {

// Collects everything a command writes under --out-dir and finishes with a
// manifest.json naming the artifacts and the effective config hash.
class ArtifactSink {
public:
    explicit ArtifactSink(const std::filesystem::path& out_dir);

    // Register `rel` as an artifact and return its absolute path, creating
    // intermediate directories as needed.
    std::filesystem::path path(const std::string& rel);

    const std::filesystem::path& root() const { return root_; }

    void write_manifest(const std::string& command, const nlohmann::json& config);

private:
    std::filesystem::path root_;
    std::vector<std::string> artifacts_;
};

}  // namespace samptool
