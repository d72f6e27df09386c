#pragma once

#include <cstdint>
#include <vector>

namespace gridmaint {

// Static flow-limit bounds that may be left out of the operational model, per
// (line, day, hour). Only lines marked eligible (never switched) can carry flags.
class FlowBoundMask {
 public:
  FlowBoundMask() = default;
  FlowBoundMask(int lines, int days, int hours)
      : lines_(lines), days_(days), hours_(hours), eligible_(lines, 0),
        bits_(static_cast<size_t>(lines) * days * hours, 0) {}

  int lines() const { return lines_; }
  int days() const { return days_; }
  int hours() const { return hours_; }

  void set_eligible(int line, bool e) { eligible_[line] = e; }
  bool eligible(int line) const { return eligible_[line] != 0; }

  // day and hour 0-based.
  void drop_upper(int line, int day, int hour) { bits_[flat(line, day, hour)] |= 1; }
  void drop_lower(int line, int day, int hour) { bits_[flat(line, day, hour)] |= 2; }
  bool upper_dropped(int line, int day, int hour) const { return bits_[flat(line, day, hour)] & 1; }
  bool lower_dropped(int line, int day, int hour) const { return bits_[flat(line, day, hour)] & 2; }
  int count_dropped() const {
    int c = 0;
    for (auto b : bits_) c += (b & 1) + ((b >> 1) & 1);
    return c;
  }

 private:
  size_t flat(int line, int day, int hour) const {
    return (static_cast<size_t>(line) * days_ + day) * hours_ + hour;
  }
  int lines_ = 0, days_ = 0, hours_ = 0;
  std::vector<std::uint8_t> eligible_;
  std::vector<std::uint8_t> bits_;
};

}  // namespace gridmaint
