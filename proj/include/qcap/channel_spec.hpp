#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "qcap/channel.hpp"

namespace qcap {

// A channel read from a spec file, with whatever named/Kraus form it came in.
struct ChannelSpec {
    ChannelParams params;
    std::optional<NamedChannelSpec> named;
    std::optional<KrausSet> kraus;
};

/// Accepts {"type": "krsw", "t": [3], "lambda": [3]},
/// {"type": "named", "name": ..., "x": ...} or {"type": "kraus", "ops": [...]}.
/// Each Kraus op is either [[[re,im],[re,im]],[[re,im],[re,im]]] or a flat
/// row-major list of four [re,im] pairs. Throws Error(InvalidSpec) on
/// malformed input and Error(InvalidChannel) when the channel is not valid.
ChannelSpec parse_channel_spec(const nlohmann::json& j);
ChannelSpec load_channel_spec(const std::filesystem::path& path);

nlohmann::json to_json(const ChannelParams& p);

}  // namespace qcap
