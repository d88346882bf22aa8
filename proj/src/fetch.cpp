// Copyright 2026 The scsdg Authors
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

#include <curl/curl.h>
#include <zlib.h>

#include <filesystem>
#include <fstream>
#include <memory>

#include "scsdg/cli.hpp"
#include "scsdg/error.hpp"

namespace scsdg::cli {
namespace {

std::size_t AppendChunk(char* data, std::size_t size, std::size_t count,
                        void* user) {
  static_cast<std::string*>(user)->append(data, size * count);
  return size * count;
}

std::string Download(const std::string& url) {
  struct Easy {
    CURL* handle = curl_easy_init();
    ~Easy() {
      if (handle) curl_easy_cleanup(handle);
    }
  } easy;
  if (!easy.handle) throw Error(ErrorKind::kIo, "curl initialisation failed");

  std::string body;
  char message[CURL_ERROR_SIZE] = {};
  curl_easy_setopt(easy.handle, CURLOPT_URL, url.c_str());
  curl_easy_setopt(easy.handle, CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(easy.handle, CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(easy.handle, CURLOPT_CONNECTTIMEOUT, 30L);
  curl_easy_setopt(easy.handle, CURLOPT_WRITEFUNCTION, AppendChunk);
  curl_easy_setopt(easy.handle, CURLOPT_WRITEDATA, &body);
  curl_easy_setopt(easy.handle, CURLOPT_ERRORBUFFER, message);
  const CURLcode code = curl_easy_perform(easy.handle);
  if (code != CURLE_OK) {
    throw Error(ErrorKind::kIo, "download of " + url + " failed: " +
                                    (message[0] ? message : curl_easy_strerror(code)));
  }
  return body;
}

std::string Gunzip(const std::string& compressed) {
  z_stream stream{};
  // 16 + MAX_WBITS selects the gzip wrapper.
  if (inflateInit2(&stream, 16 + MAX_WBITS) != Z_OK) {
    throw Error(ErrorKind::kIo, "zlib initialisation failed");
  }
  std::unique_ptr<z_stream, int (*)(z_stream*)> guard(&stream, inflateEnd);
  stream.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  stream.avail_in = static_cast<uInt>(compressed.size());

  std::string out;
  char buffer[1 << 16];
  int status = Z_OK;
  while (status != Z_STREAM_END) {
    stream.next_out = reinterpret_cast<Bytef*>(buffer);
    stream.avail_out = sizeof buffer;
    status = inflate(&stream, Z_NO_FLUSH);
    if (status != Z_OK && status != Z_STREAM_END) {
      throw Error(ErrorKind::kIo, std::string("gzip decoding failed: ") +
                                      (stream.msg ? stream.msg : "corrupt data"));
    }
    out.append(buffer, sizeof buffer - stream.avail_out);
    if (status == Z_OK && stream.avail_in == 0 && stream.avail_out != 0) {
      throw Error(ErrorKind::kIo, "gzip decoding failed: truncated input");
    }
  }
  return out;
}

}  // namespace

void VerifyQssp30(const ConicProgram& program) {
  if (program.n != kQssp30Vars || program.m != kQssp30Rows) {
    throw Error(ErrorKind::kParse,
                "qssp30 has n = " + std::to_string(kQssp30Vars) + ", m = " +
                    std::to_string(kQssp30Rows) + "; got n = " +
                    std::to_string(program.n) + ", m = " + std::to_string(program.m));
  }
}

void FetchCbf(const std::string& url, const std::string& destination,
              const std::function<void(const ConicProgram&)>& verify) {
  const std::string text = Gunzip(Download(url));
  const ConicProgram program = ParseCbfSubset(text);
  ValidateProgram(program);
  if (verify) verify(program);

  const std::filesystem::path path(destination);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::string partial = destination + ".part";
  {
    std::ofstream out(partial, std::ios::binary);
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + partial);
    out << text;
    if (!out.flush()) throw Error(ErrorKind::kIo, "cannot write " + partial);
  }
  std::filesystem::rename(partial, destination);
}

int CmdFetchQssp30(const std::string& url, const std::string& directory,
                   std::ostream& out, std::ostream& err) {
  const std::string destination =
      (std::filesystem::path(directory) / "qssp30.cbf").string();
  try {
    curl_global_init(CURL_GLOBAL_DEFAULT);
    FetchCbf(url, destination, VerifyQssp30);
    curl_global_cleanup();
  } catch (const std::exception& e) {
    curl_global_cleanup();
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  out << "wrote " << destination << '\n';
  return kExitSuccess;
}

}  // namespace scsdg::cli
