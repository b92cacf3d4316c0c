// Copyright 2026 The refalloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Owning wrappers for the C API handles.

#ifndef REFALLOC_TOOLS_HANDLES_HPP_
#define REFALLOC_TOOLS_HANDLES_HPP_

#include <memory>
#include <string>

#include "refalloc/refalloc.h"

namespace refalloc::tools {

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using StorePtr = std::unique_ptr<refalloc_store, Deleter<refalloc_store, refalloc_store_free>>;
using ResultPtr = std::unique_ptr<refalloc_result, Deleter<refalloc_result, refalloc_result_free>>;
using ViewsPtr = std::unique_ptr<refalloc_views, Deleter<refalloc_views, refalloc_views_free>>;
using OfficialsPtr =
    std::unique_ptr<refalloc_officials, Deleter<refalloc_officials, refalloc_officials_free>>;

// Takes ownership of a string returned through a char** out parameter.
inline std::string take_string(char* s) {
  std::string out = s ? s : "";
  refalloc_string_free(s);
  return out;
}

}  // namespace refalloc::tools

#endif  // REFALLOC_TOOLS_HANDLES_HPP_
