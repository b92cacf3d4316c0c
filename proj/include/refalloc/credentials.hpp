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

#ifndef REFALLOC_CREDENTIALS_HPP_
#define REFALLOC_CREDENTIALS_HPP_

#include <string>
#include <string_view>

namespace refalloc {

// Salted PBKDF2-HMAC-SHA256, encoded as
//   pbkdf2-sha256$<iterations>$<salt hex>$<hash hex>
std::string make_password_digest(std::string_view password, int iterations = 20000);

// False for malformed or empty digests. The hash comparison is constant-time.
bool verify_password(std::string_view password, std::string_view digest);

}  // namespace refalloc

#endif  // REFALLOC_CREDENTIALS_HPP_
