#pragma once

// Mini-grammar for naming channels and states on the command line:
//
//   name:key=value,key=value
//
// e.g. "randomizing:d=16", "werner:d=4,lambda=0.75", "random:a=8,b=8,e=64,seed=7".
// Parse errors quote the offending token.

#include <cstdint>
#include <map>
#include <string>

#include "chancomp/channel.hpp"

namespace chancomp {

struct ChannelSpec {
  std::string name;
  std::map<std::string, std::string> params;

  std::string to_string() const;
};

ChannelSpec parse_spec(const std::string& text);

/// Builds randomizing, werner, qc, cq, random, identity and forgetful channels.
Channel build_channel(const ChannelSpec& spec);
Channel build_channel(const std::string& text);

/// Output states for the forgetful channel: "maxmixed:d=8", "pure:d=8,k=0",
/// "random:d=8,rank=3,seed=1".
CMatrix build_state(const ChannelSpec& spec);
CMatrix build_state(const std::string& text);

}  // namespace chancomp
