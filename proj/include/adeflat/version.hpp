#pragma once

namespace ade {

// Engine version: bump when on-disk cache or JSON schema semantics change.
inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kEngineTag = "adeflat-1";
inline constexpr int kSchemaVersion = 1;

} // namespace ade
