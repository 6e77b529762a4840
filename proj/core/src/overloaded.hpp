#pragma once

namespace cvbound::detail {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace cvbound::detail
