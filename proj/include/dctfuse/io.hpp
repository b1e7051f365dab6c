#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace dctfuse {

// Throws Error when the file cannot be opened or read.
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path,
                std::span<const std::uint8_t> bytes);

}  // namespace dctfuse
