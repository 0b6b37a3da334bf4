#!/usr/bin/env python3
#
# Copyright 2026 The lexsimp Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
"""Masked-LM worker for the transformer backend.

Reads one JSON request per line on stdin and writes one JSON response per
line on stdout. See include/lexsimp/transformer_backend.hpp for the protocol.
"""

import argparse
import json
import sys


def _fail(msg):
    return {"ok": False, "error": msg}


class Worker:
    def __init__(self, model, max_length, device):
        import torch
        from transformers import AutoModelForMaskedLM, AutoTokenizer

        self.torch = torch
        self.tok = AutoTokenizer.from_pretrained(model, use_fast=True)
        self.model = AutoModelForMaskedLM.from_pretrained(model)
        self.model.eval()
        self.model.to(device)
        self.device = device
        self.max_length = max_length
        self.name = model
        if self.tok.mask_token is None:
            raise ValueError("tokenizer has no mask token")

    def _encode(self, seg_a, seg_b):
        # Words are pre-split; "[MASK]" words map to the tokenizer's mask token.
        def fix(words):
            return [self.tok.mask_token if w == "[MASK]" else w for w in words]

        if seg_b is None:
            enc = self.tok(fix(seg_a), is_split_into_words=True, return_tensors="pt")
        else:
            enc = self.tok(fix(seg_a), fix(seg_b), is_split_into_words=True, return_tensors="pt")
        n = enc["input_ids"].shape[1]
        if n > self.max_length:
            raise OverflowError(
                "sequence has %d subword tokens, model limit is %d; truncate the context window"
                % (n, self.max_length))
        return enc

    def _slot_index(self, enc, segment, index):
        word_ids = enc.word_ids(0)
        seq_ids = enc.sequence_ids(0)
        for i, (w, s) in enumerate(zip(word_ids, seq_ids)):
            if w == index and s == segment:
                return i
        raise IndexError("mask slot not found after tokenization")

    def info(self, _req):
        return {"ok": True, "model": self.name, "max_length": self.max_length,
                "vocab_size": self.tok.vocab_size}

    def predict(self, req):
        torch = self.torch
        slot = req["slot"]
        enc = self._encode(req["segment_a"], req.get("segment_b"))
        pos = self._slot_index(enc, slot["segment"], slot["index"])
        with torch.no_grad():
            logits = self.model(**{k: v.to(self.device) for k, v in enc.items()}).logits[0, pos]
        probs = torch.softmax(logits.float(), dim=-1)
        top = min(int(req["top"]), probs.shape[0])
        values, ids = torch.topk(probs, top)
        tokens = self.tok.convert_ids_to_tokens(ids.tolist())
        return {"ok": True, "predictions": [[t, float(v)] for t, v in zip(tokens, values.tolist())]}

    def losses(self, req):
        torch = self.torch
        words = list(req["tokens"])
        batch_ids = []
        spans = []
        pieces_out = []
        for target in req["targets"]:
            j = int(target["position"])
            pieces = self.tok.tokenize(target["target"])
            if not pieces:
                raise ValueError("target '%s' has no subword pieces" % target["target"])
            piece_ids = self.tok.convert_tokens_to_ids(pieces)
            ids = [self.tok.cls_token_id]
            start = None
            for i, w in enumerate(words):
                if i == j:
                    start = len(ids)
                    ids.extend([self.tok.mask_token_id] * len(pieces))
                else:
                    ids.extend(self.tok.convert_tokens_to_ids(self.tok.tokenize(w)))
            ids.append(self.tok.sep_token_id)
            if len(ids) > self.max_length:
                raise OverflowError(
                    "sequence has %d subword tokens, model limit is %d; truncate the context window"
                    % (len(ids), self.max_length))
            batch_ids.append(ids)
            spans.append((start, piece_ids))
            pieces_out.append(pieces)
        if not batch_ids:
            return {"ok": True, "losses": []}
        width = max(len(x) for x in batch_ids)
        pad = self.tok.pad_token_id or 0
        input_ids = torch.full((len(batch_ids), width), pad, dtype=torch.long)
        attention = torch.zeros((len(batch_ids), width), dtype=torch.long)
        for r, ids in enumerate(batch_ids):
            input_ids[r, :len(ids)] = torch.tensor(ids)
            attention[r, :len(ids)] = 1
        with torch.no_grad():
            logits = self.model(input_ids=input_ids.to(self.device),
                                attention_mask=attention.to(self.device)).logits
        logp = torch.log_softmax(logits.float(), dim=-1)
        out = []
        for r, (start, piece_ids) in enumerate(spans):
            nats = [-float(logp[r, start + p, pid]) for p, pid in enumerate(piece_ids)]
            out.append({"pieces": pieces_out[r], "nats": nats})
        return {"ok": True, "losses": out}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--model", required=True)
    ap.add_argument("--max-length", type=int, default=512)
    ap.add_argument("--device", default="cpu")
    args = ap.parse_args()

    try:
        worker = Worker(args.model, args.max_length, args.device)
        ready_error = None
    except Exception as e:  # reported on the first request
        worker = None
        ready_error = "failed to load model '%s': %s" % (args.model, e)

    ops = {"info": "info", "predict": "predict", "losses": "losses"}
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        try:
            req = json.loads(line)
            if worker is None:
                resp = _fail(ready_error)
            elif req.get("op") not in ops:
                resp = _fail("unknown op %r" % req.get("op"))
            else:
                resp = getattr(worker, ops[req["op"]])(req)
        except Exception as e:
            resp = _fail("%s: %s" % (type(e).__name__, e))
        sys.stdout.write(json.dumps(resp) + "\n")
        sys.stdout.flush()


if __name__ == "__main__":
    main()
