#pragma once

#include <stdexcept>
#include <string>

namespace episis {

enum class ControlMode { uncontrolled, infection, recovery };

inline std::string to_string(ControlMode m) {
  switch (m) {
    case ControlMode::uncontrolled: return "uncontrolled";
    case ControlMode::infection: return "infection";
    case ControlMode::recovery: return "recovery";
  }
  return "uncontrolled";
}

inline ControlMode control_mode_from_string(const std::string& s) {
  if (s == "uncontrolled") return ControlMode::uncontrolled;
  if (s == "infection") return ControlMode::infection;
  if (s == "recovery") return ControlMode::recovery;
  throw std::invalid_argument("unknown control mode: " + s);
}

}  // namespace episis
