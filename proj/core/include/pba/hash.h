// Copyright (c) 2026 The pba Authors
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

#ifndef PBA_HASH_H_
#define PBA_HASH_H_

#include <string>
#include <string_view>

namespace pba {

// SHA-256 hex digest; used as the content hash embedded in index caches.
std::string Sha256Hex(std::string_view data);

}  // namespace pba

#endif  // PBA_HASH_H_
