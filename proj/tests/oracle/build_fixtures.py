#!/usr/bin/env python3
# Copyright 2026 The wasm-debloat Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Assembles the fixture corpus and records reference outcomes.

Each fixture NAME produces three files in tests/fixtures:
  NAME.wasm           assembled with wasmtime's text assembler
  NAME.workload.json  the workload document
  NAME.expected.json  outcomes observed by running the workload on wasmtime

The expected files are committed; this script only needs to be rerun when a
fixture changes. Usage: build_fixtures.py [OUTDIR]
"""

import json
import math
import pathlib
import struct
import sys

import wasmtime

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3

TRAP_KINDS = {
    "UNREACHABLE": "unreachable",
    "INTEGER_DIVISION_BY_ZERO": "divide-by-zero",
    "INTEGER_OVERFLOW": "integer-overflow",
    "BAD_CONVERSION_TO_INTEGER": "integer-overflow",
    "MEMORY_OUT_OF_BOUNDS": "out-of-bounds-memory",
    "HEAP_MISALIGNED": "out-of-bounds-memory",
    "TABLE_OUT_OF_BOUNDS": "out-of-bounds-table",
    "BAD_SIGNATURE": "indirect-call-type-mismatch",
    "INDIRECT_CALL_TO_NULL": "undefined-table-element",
    "STACK_OVERFLOW": "stack-exhausted",
    "OUT_OF_FUEL": "fuel-exhausted",
}


class Fixture:
    def __init__(self, name, wat, invocations=(), fuel=None, trailer=b""):
        self.name = name
        self.wat = wat
        self.invocations = list(invocations)
        self.fuel = fuel
        self.trailer = trailer

    def workload(self):
        doc = {"invocations": [{"func": f, "args": list(a)} for f, a in self.invocations]}
        if self.fuel is not None:
            doc["fuel"] = self.fuel
        return doc


def i32(v):
    return {"i32": v}


def i64(v):
    return {"i64": str(v)}


def f32(v):
    return {"f32": v}


def f64(v):
    return {"f64": v}


def custom_section(name, payload):
    body = leb(len(name)) + name.encode() + payload
    return b"\x00" + leb(len(body)) + body


def leb(n):
    out = bytearray()
    while True:
        byte = n & 0x7F
        n >>= 7
        if n:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return bytes(out)


FIXTURES = [
    Fixture("empty", "(module)"),
    Fixture(
        "add",
        """(module
  (func $add (export "add") (param i32 i32) (result i32)
    local.get 0
    local.get 1
    i32.add))""",
        [("add", [i32(2), i32(3)]), ("add", [i32(-1), i32(1)]), ("add", [i32(2147483647), i32(1)])],
    ),
    Fixture(
        "main_helper",
        """(module
  (func $main (export "main") (result i32)
    i32.const 20
    call $helper)
  (func $helper (param i32) (result i32)
    local.get 0
    i32.const 22
    i32.add))""",
        [("main", [])],
    ),
    Fixture(
        "three_funcs",
        """(module
  (func $main (export "main") (result i32)
    i32.const 20
    call $helper)
  (func $helper (param i32) (result i32)
    local.get 0
    i32.const 22
    i32.add)
  (func $dead (param i32) (result i32)
    local.get 0
    i32.const 3
    i32.mul))""",
        [("main", [])],
    ),
    Fixture(
        "call_chain",
        """(module
  (func $run (export "run") (param i32) (result i32)
    local.get 0
    if (result i32)
      local.get 0
      call $callee
    else
      i32.const 7
    end)
  (func $dead (result i32)
    i32.const 1)
  (func $callee (param i32) (result i32)
    local.get 0
    i32.const 100
    i32.mul))""",
        [("run", [i32(0)])],
    ),
    Fixture(
        "indirect",
        """(module
  (type $unary (func (param i32) (result i32)))
  (table 2 funcref)
  (elem (i32.const 0) $double $square)
  (func $dispatch (export "dispatch") (param i32 i32) (result i32)
    local.get 1
    local.get 0
    call_indirect (type $unary))
  (func $double (type $unary)
    local.get 0
    i32.const 2
    i32.mul)
  (func $square (type $unary)
    local.get 0
    local.get 0
    i32.mul))""",
        [("dispatch", [i32(1), i32(9)])],
    ),
    Fixture(
        "unused_import",
        """(module
  (import "env" "log" (func $log (param i32)))
  (func $inc (export "inc") (param i32) (result i32)
    local.get 0
    i32.const 1
    i32.add)
  (func $noisy (param i32)
    local.get 0
    call $log))""",
        [("inc", [i32(41)])],
    ),
    Fixture(
        "calculator",
        """(module
  (type $binary (func (param i32 i32) (result i32)))
  (type $unary (func (param i32) (result i32)))
  (import "env" "log" (func $log (param i32)))
  (import "env" "abort" (func $abort))
  (table 2 funcref)
  (elem (i32.const 0) $neg $abs)
  (func $add (export "add") (type $binary)
    local.get 0
    local.get 1
    i32.add)
  (func $sub (export "sub") (type $binary)
    local.get 0
    call $log
    local.get 0
    local.get 1
    i32.sub)
  (func $mul (export "mul") (type $binary)
    local.get 0
    local.get 1
    i32.mul)
  (func $div (export "div") (type $binary)
    local.get 1
    i32.eqz
    if
      i32.const 0
      return
    end
    local.get 0
    local.get 1
    call $mod
    drop
    local.get 0
    local.get 1
    i32.div_s)
  (func $mod (type $binary)
    local.get 0
    local.get 1
    i32.rem_s)
  (func $neg (type $unary)
    i32.const 0
    local.get 0
    i32.sub)
  (func $abs (type $unary)
    (local $m i32)
    local.get 0
    i32.const 31
    i32.shr_s
    local.set $m
    local.get 0
    local.get $m
    i32.xor
    local.get $m
    i32.sub)
  (func $dispatch (export "dispatch") (param $slot i32) (param $x i32) (result i32)
    local.get $x
    local.get $slot
    call_indirect (type $unary))
  (func $unusedA (type $binary)
    local.get 0
    local.get 1
    call $unusedB
    i32.const 3
    i32.mul)
  (func $unusedB (type $binary)
    local.get 1
    i32.eqz
    if
      call $abort
    end
    local.get 0
    local.get 1
    i32.and))""",
        [("add", [i32(3), i32(4)]), ("sub", [i32(10), i32(4)]), ("dispatch", [i32(0), i32(5)])],
    ),
    Fixture(
        "memory_data",
        """(module
  (memory (export "memory") 1)
  (data (i32.const 16) "The quick brown fox jumps over the lazy dog. Pack my box with five dozen liquor jugs! 0123456789abcdef")
  (func $sum (export "sum") (param $from i32) (param $len i32) (result i32)
    (local $acc i32)
    block $done
      loop $next
        local.get $len
        i32.eqz
        br_if $done
        local.get $acc
        local.get $from
        i32.load8_u
        i32.add
        local.set $acc
        local.get $from
        i32.const 1
        i32.add
        local.set $from
        local.get $len
        i32.const 1
        i32.sub
        local.set $len
        br $next
      end
    end
    local.get $acc)
  (func $poke (export "poke") (param i32 i64)
    local.get 0
    local.get 1
    i64.store offset=4 align=4)
  (func $peek (export "peek") (param i32) (result i64)
    local.get 0
    i64.load offset=4)
  (func $peek16 (export "peek16") (param i32) (result i32)
    local.get 0
    i32.load16_s))""",
        [
            ("sum", [i32(16), i32(100)]),
            ("poke", [i32(200), i64(-81985529216486896)]),
            ("peek", [i32(200)]),
            ("peek16", [i32(206)]),
            ("peek", [i32(65530)]),
        ],
    ),
    Fixture(
        "globals",
        """(module
  (global $counter (mut i32) (i32.const 0))
  (global $step i32 (i32.const 5))
  (global $wide (mut i64) (i64.const -1))
  (global $ratio (mut f64) (f64.const 0.5))
  (export "step" (global $step))
  (func $tick (export "tick") (result i32)
    global.get $counter
    global.get $step
    i32.add
    global.set $counter
    global.get $counter)
  (func $shift (export "shift") (result i64)
    global.get $wide
    i64.const 4
    i64.shr_u
    global.set $wide
    global.get $wide)
  (func $scale (export "scale") (param f64) (result f64)
    global.get $ratio
    local.get 0
    f64.mul
    global.set $ratio
    global.get $ratio))""",
        [("tick", []), ("tick", []), ("shift", []), ("scale", [f64(3.0)]), ("tick", [])],
    ),
    Fixture(
        "loops",
        """(module
  (func $fact (export "fact") (param $n i64) (result i64)
    (local $acc i64)
    i64.const 1
    local.set $acc
    block $exit
      loop $top
        local.get $n
        i64.const 1
        i64.le_u
        br_if $exit
        local.get $acc
        local.get $n
        i64.mul
        local.set $acc
        local.get $n
        i64.const 1
        i64.sub
        local.set $n
        br $top
      end
    end
    local.get $acc)
  (func $fib (export "fib") (param $n i32) (result i32)
    (local $a i32) (local $b i32) (local $t i32)
    i32.const 1
    local.set $b
    block $exit
      loop $top
        local.get $n
        i32.eqz
        br_if $exit
        local.get $a
        local.get $b
        i32.add
        local.set $t
        local.get $b
        local.set $a
        local.get $t
        local.set $b
        local.get $n
        i32.const 1
        i32.sub
        local.set $n
        br $top
      end
    end
    local.get $a))""",
        [("fact", [i64(20)]), ("fact", [i64(25)]), ("fib", [i32(30)]), ("fib", [i32(50)])],
    ),
    Fixture(
        "br_table",
        """(module
  (func $classify (export "classify") (param i32) (result i32)
    block $default
      block $two
        block $one
          block $zero
            local.get 0
            br_table $zero $one $two $default
          end
          i32.const 100
          return
        end
        i32.const 101
        return
      end
      i32.const 102
      return
    end
    i32.const -1)
  (func $valued (export "valued") (param i32) (result i32)
    block $out (result i32)
      i32.const 7
      local.get 0
      br_table $out $out
    end))""",
        [
            ("classify", [i32(0)]),
            ("classify", [i32(1)]),
            ("classify", [i32(2)]),
            ("classify", [i32(3)]),
            ("classify", [i32(-5)]),
            ("valued", [i32(9)]),
        ],
    ),
    Fixture(
        "traps",
        """(module
  (memory (export "memory") 1)
  (func $div (export "div") (param i32 i32) (result i32)
    local.get 0
    local.get 1
    i32.div_s)
  (func $rem (export "rem") (param i64 i64) (result i64)
    local.get 0
    local.get 1
    i64.rem_s)
  (func $divu (export "divu") (param i64 i64) (result i64)
    local.get 0
    local.get 1
    i64.div_u)
  (func $load (export "load") (param i32) (result i32)
    local.get 0
    i32.load)
  (func $store (export "store") (param i32)
    local.get 0
    i32.const 1
    i32.store8 offset=3)
  (func $boom (export "boom")
    unreachable))""",
        [
            ("div", [i32(7), i32(0)]),
            ("div", [i32(-2147483648), i32(-1)]),
            ("div", [i32(-7), i32(2)]),
            ("rem", [i64(-9223372036854775808), i64(-1)]),
            ("rem", [i64(5), i64(0)]),
            ("divu", [i64(-1), i64(3)]),
            ("load", [i32(65532)]),
            ("load", [i32(65533)]),
            ("load", [i32(-1)]),
            ("store", [i32(65532)]),
            ("store", [i32(65533)]),
            ("boom", []),
            ("div", [i32(9), i32(3)]),
        ],
    ),
    Fixture(
        "floats",
        """(module
  (func (export "f32_ops") (param f32 f32) (result f32)
    local.get 0
    local.get 1
    f32.add
    local.get 0
    f32.mul
    f32.sqrt)
  (func (export "f64_div") (param f64 f64) (result f64)
    local.get 0
    local.get 1
    f64.div)
  (func (export "f32_min") (param f32 f32) (result f32)
    local.get 0
    local.get 1
    f32.min)
  (func (export "f64_max") (param f64 f64) (result f64)
    local.get 0
    local.get 1
    f64.max)
  (func (export "nearest") (param f64) (result f64)
    local.get 0
    f64.nearest)
  (func (export "trunc32") (param f32) (result f32)
    local.get 0
    f32.trunc)
  (func (export "floor") (param f64) (result f64)
    local.get 0
    f64.floor)
  (func (export "ceil") (param f32) (result f32)
    local.get 0
    f32.ceil)
  (func (export "copysign") (param f64 f64) (result f64)
    local.get 0
    local.get 1
    f64.copysign)
  (func (export "negabs") (param f32) (result f32)
    local.get 0
    f32.abs
    f32.neg)
  (func (export "cmp") (param f64 f64) (result i32)
    local.get 0
    local.get 1
    f64.lt
    local.get 0
    local.get 1
    f64.ne
    i32.const 1
    i32.shl
    i32.or))""",
        [
            ("f32_ops", [f32(1.5), f32(2.25)]),
            ("f64_div", [f64(1.0), f64(3.0)]),
            ("f64_div", [f64(1.0), f64(0.0)]),
            ("f64_div", [f64(0.0), f64(0.0)]),
            ("f32_min", [f32(-0.0), f32(0.0)]),
            ("f32_min", [f32("nan"), f32(1.0)]),
            ("f64_max", [f64(-0.0), f64(0.0)]),
            ("f64_max", [f64("-inf"), f64(-1e308)]),
            ("nearest", [f64(2.5)]),
            ("nearest", [f64(-3.5)]),
            ("nearest", [f64(-0.4)]),
            ("trunc32", [f32(-7.9)]),
            ("floor", [f64(-0.5)]),
            ("ceil", [f32(-0.5)]),
            ("copysign", [f64(3.0), f64(-0.0)]),
            ("negabs", [f32(-2.0)]),
            ("cmp", [f64(1.0), f64(2.0)]),
            ("cmp", [f64("nan"), f64(2.0)]),
        ],
    ),
    Fixture(
        "i64_ops",
        """(module
  (func (export "bits") (param i64) (result i64)
    local.get 0
    i64.clz
    local.get 0
    i64.ctz
    i64.const 8
    i64.shl
    i64.or
    local.get 0
    i64.popcnt
    i64.const 16
    i64.shl
    i64.or)
  (func (export "rot") (param i64 i64) (result i64)
    local.get 0
    local.get 1
    i64.rotl
    local.get 0
    local.get 1
    i64.rotr
    i64.xor)
  (func (export "shifts") (param i64 i64) (result i64)
    local.get 0
    local.get 1
    i64.shr_s
    local.get 0
    local.get 1
    i64.shr_u
    i64.add)
  (func (export "cmp") (param i64 i64) (result i32)
    local.get 0
    local.get 1
    i64.lt_s
    local.get 0
    local.get 1
    i64.lt_u
    i32.const 1
    i32.shl
    i32.or
    local.get 0
    i64.eqz
    i32.const 2
    i32.shl
    i32.or)
  (func (export "bits32") (param i32) (result i32)
    local.get 0
    i32.clz
    local.get 0
    i32.ctz
    i32.add
    local.get 0
    i32.popcnt
    i32.mul
    local.get 0
    i32.const 13
    i32.rotl
    i32.xor))""",
        [
            ("bits", [i64(0)]),
            ("bits", [i64(0x00F0000000000100)]),
            ("rot", [i64(-81985529216486896), i64(67)]),
            ("shifts", [i64(-1024), i64(65)]),
            ("cmp", [i64(-1), i64(1)]),
            ("cmp", [i64(0), i64(0)]),
            ("bits32", [i32(0)]),
            ("bits32", [i32(0x00012340)]),
        ],
    ),
    Fixture(
        "conversions",
        """(module
  (func (export "trunc_s") (param f64) (result i32)
    local.get 0
    i32.trunc_f64_s)
  (func (export "trunc_u") (param f32) (result i32)
    local.get 0
    i32.trunc_f32_u)
  (func (export "trunc64") (param f64) (result i64)
    local.get 0
    i64.trunc_f64_u)
  (func (export "wrap") (param i64) (result i32)
    local.get 0
    i32.wrap_i64)
  (func (export "extend") (param i32) (result i64)
    local.get 0
    i64.extend_i32_s
    local.get 0
    i64.extend_i32_u
    i64.add)
  (func (export "convert") (param i64) (result f32)
    local.get 0
    f32.convert_i64_u)
  (func (export "convert_s") (param i32) (result f64)
    local.get 0
    f64.convert_i32_s)
  (func (export "demote") (param f64) (result f32)
    local.get 0
    f32.demote_f64)
  (func (export "promote") (param f32) (result f64)
    local.get 0
    f64.promote_f32)
  (func (export "reinterpret") (param f32) (result i32)
    local.get 0
    i32.reinterpret_f32)
  (func (export "reinterpret64") (param i64) (result f64)
    local.get 0
    f64.reinterpret_i64))""",
        [
            ("trunc_s", [f64(-2147483648.9)]),
            ("trunc_s", [f64(2147483648.0)]),
            ("trunc_s", [f64("nan")]),
            ("trunc_u", [f32(-0.9)]),
            ("trunc_u", [f32(4294967040.0)]),
            ("trunc_u", [f32(-1.0)]),
            ("trunc64", [f64(1.8446744073709550e19)]),
            ("trunc64", [f64("inf")]),
            ("wrap", [i64(0x123456789)]),
            ("extend", [i32(-3)]),
            ("convert", [i64(-1)]),
            ("convert_s", [i32(-2147483648)]),
            ("demote", [f64(1e300)]),
            ("demote", [f64(0.1)]),
            ("promote", [f32(0.1)]),
            ("reinterpret", [f32(-1.0)]),
            ("reinterpret64", [i64(0x3FF0000000000000)]),
        ],
    ),
    Fixture(
        "start",
        """(module
  (import "env" "log" (func $log (param i32)))
  (memory (export "memory") 1)
  (global $ready (mut i32) (i32.const 0))
  (func $init
    i32.const 8
    i32.const 1234
    i32.store
    i32.const 1
    global.set $ready
    i32.const 99
    call $log)
  (start $init)
  (func $read (export "read") (result i32)
    global.get $ready
    i32.const 8
    i32.load
    i32.add))""",
        [("read", [])],
    ),
    Fixture(
        "recursion",
        """(module
  (func $fact (export "fact") (param i32) (result i32)
    local.get 0
    i32.const 2
    i32.lt_u
    if (result i32)
      i32.const 1
    else
      local.get 0
      local.get 0
      i32.const 1
      i32.sub
      call $fact
      i32.mul
    end)
  (func $even (export "even") (param i32) (result i32)
    local.get 0
    i32.eqz
    if (result i32)
      i32.const 1
    else
      local.get 0
      i32.const 1
      i32.sub
      call $odd
    end)
  (func $odd (param i32) (result i32)
    local.get 0
    i32.eqz
    if (result i32)
      i32.const 0
    else
      local.get 0
      i32.const 1
      i32.sub
      call $even
    end)
  (func $forever (export "forever") (param i32) (result i32)
    local.get 0
    i32.const 1
    i32.add
    call $forever))""",
        [("fact", [i32(10)]), ("even", [i32(101)]), ("forever", [i32(0)]), ("fact", [i32(5)])],
    ),
    Fixture(
        "indirect_mismatch",
        """(module
  (type $unary (func (param i32) (result i32)))
  (type $nullary (func (result i32)))
  (table 4 funcref)
  (elem (i32.const 0) $id $seven)
  (func $id (type $unary)
    local.get 0)
  (func $seven (type $nullary)
    i32.const 7)
  (func $call1 (export "call1") (param $slot i32) (result i32)
    i32.const 5
    local.get $slot
    call_indirect (type $unary))
  (func $call0 (export "call0") (param $slot i32) (result i32)
    local.get $slot
    call_indirect (type $nullary)))""",
        [
            ("call1", [i32(0)]),
            ("call1", [i32(1)]),
            ("call0", [i32(1)]),
            ("call0", [i32(2)]),
            ("call0", [i32(4)]),
        ],
    ),
    Fixture(
        "custom_section",
        """(module
  (func $twice (export "twice") (param i32) (result i32)
    local.get 0
    local.get 0
    i32.add)
  (func $unused (param i32) (result i32)
    local.get 0))""",
        [("twice", [i32(21)])],
        trailer=custom_section("producers", b"\x01\x08language\x01\x03wat\x00")
        + custom_section("metadata.debloat", b"opaque payload"),
    ),
    Fixture(
        "elem_oob",
        """(module
  (table 2 funcref)
  (elem (i32.const 1) $f $f)
  (func $f (export "f") (result i32)
    i32.const 1))""",
        [("f", [])],
    ),
    Fixture(
        "data_oob",
        """(module
  (memory (export "memory") 1)
  (data (i32.const 0) "early")
  (data (i32.const 65534) "late")
  (func $f (export "f") (result i32)
    i32.const 0
    i32.load8_u))""",
        [("f", [])],
    ),
    Fixture(
        "memory_grow",
        """(module
  (memory (export "memory") 1 4)
  (func $grow (export "grow") (param i32) (result i32)
    local.get 0
    memory.grow)
  (func $size (export "size") (result i32)
    memory.size)
  (func $touch (export "touch") (param i32)
    local.get 0
    i32.const 0xAB
    i32.store8))""",
        [
            ("size", []),
            ("grow", [i32(1)]),
            ("touch", [i32(100000)]),
            ("grow", [i32(5)]),
            ("grow", [i32(2)]),
            ("size", []),
            ("touch", [i32(262143)]),
            ("touch", [i32(262144)]),
        ],
    ),
    Fixture(
        "select_blocks",
        """(module
  (func $pick (export "pick") (param i32 i64 i64) (result i64)
    local.get 1
    local.get 2
    local.get 0
    select)
  (func $nested (export "nested") (param $x i32) (result i32)
    block $a (result i32)
      block $b (result i32)
        block $c (result i32)
          local.get $x
          local.get $x
          i32.const 3
          i32.gt_s
          br_if $a
          drop
          local.get $x
          i32.const 10
          i32.mul
          local.get $x
          i32.const 1
          i32.eq
          br_if $b
          drop
          i32.const -1
        end
        i32.const 1000
        i32.add
      end
      i32.const 1
      i32.add
    end)
  (func $sign (export "sign") (param i32) (result i32)
    local.get 0
    i32.const 0
    i32.lt_s
    if (result i32)
      i32.const -1
    else
      local.get 0
      if (result i32)
        i32.const 1
      else
        i32.const 0
      end
    end))""",
        [
            ("pick", [i32(1), i64(11), i64(22)]),
            ("pick", [i32(0), i64(11), i64(22)]),
            ("nested", [i32(7)]),
            ("nested", [i32(1)]),
            ("nested", [i32(2)]),
            ("sign", [i32(-9)]),
            ("sign", [i32(0)]),
            ("sign", [i32(9)]),
        ],
    ),
    Fixture(
        "host_log",
        """(module
  (import "env" "log" (func $log (param i32)))
  (import "env" "log64" (func $log64 (param i64)))
  (import "env" "abort" (func $abort))
  (func $count (export "count") (param $n i32)
    block $done
      loop $next
        local.get $n
        i32.eqz
        br_if $done
        local.get $n
        call $log
        local.get $n
        i64.extend_i32_u
        i64.const 32
        i64.shl
        call $log64
        local.get $n
        i32.const 1
        i32.sub
        local.set $n
        br $next
      end
    end)
  (func $check (export "check") (param i32) (result i32)
    local.get 0
    call $log
    local.get 0
    i32.const 0
    i32.lt_s
    if
      call $abort
    end
    local.get 0
    i32.const 2
    i32.mul))""",
        [("count", [i32(3)]), ("check", [i32(4)]), ("check", [i32(-4)]), ("check", [i32(1)])],
    ),
    Fixture(
        "fuel",
        """(module
  (func $spin (export "spin") (param i32) (result i32)
    loop $again
      local.get 0
      i32.const 1
      i32.add
      local.set 0
      br $again
    end
    unreachable)
  (func $quick (export "quick") (param i32) (result i32)
    local.get 0
    i32.const 1
    i32.add))""",
        [("quick", [i32(1)]), ("spin", [i32(0)]), ("quick", [i32(2)])],
        fuel=100000,
    ),
    Fixture(
        "locals_mix",
        """(module
  (func $mix (export "mix") (param i32 f64) (result f64)
    (local i64 i64 f32 i32 i32 i32 f64)
    local.get 0
    i64.extend_i32_s
    local.set 2
    local.get 2
    i64.const 3
    i64.mul
    local.set 3
    local.get 1
    f32.demote_f64
    local.set 4
    local.get 3
    f64.convert_i64_s
    local.get 4
    f64.promote_f32
    f64.add
    local.tee 8
    local.get 8
    f64.add)
  (func $unused_locals (param f32) (result f32)
    (local $a i32) (local $b i64)
    local.get 0))""",
        [("mix", [i32(-4), f64(0.25)])],
    ),
]


class Abort(Exception):
    pass


def encode_value(kind, value):
    if kind == "i32":
        return {"i32": str(value & 0xFFFFFFFF)}
    if kind == "i64":
        return {"i64": str(value & 0xFFFFFFFFFFFFFFFF)}
    if math.isnan(value):
        return {kind: "nan"}
    if kind == "f32":
        return {"f32": "0x%08x" % struct.unpack("<I", struct.pack("<f", value))[0]}
    return {"f64": "0x%016x" % struct.unpack("<Q", struct.pack("<d", value))[0]}


def decode_arg(arg):
    (kind, value), = arg.items()
    if kind == "i64":
        return kind, int(value)
    if kind in ("f32", "f64") and isinstance(value, str):
        return kind, float(value)
    return kind, value


def val_kind(valtype):
    return str(valtype)


def fnv1a64(data):
    h = FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return h


def trap_outcome(exc):
    if isinstance(exc, Abort):
        return {"trap": "unreachable"}
    if isinstance(exc, wasmtime.Trap) and exc.trap_code is not None:
        return {"trap": TRAP_KINDS[exc.trap_code.name]}
    raise exc


def run(fixture, wasm):
    cfg = wasmtime.Config()
    cfg.consume_fuel = True
    engine = wasmtime.Engine(cfg)
    store = wasmtime.Store(engine)
    module = wasmtime.Module(engine, wasm)
    fuel = fixture.fuel if fixture.fuel is not None else 10_000_000

    calls = []

    def host(name, kind):
        def record(*args):
            calls.append({"name": "env." + name, "args": [encode_value(kind, a) for a in args]})
            if name == "abort":
                raise Abort()
        return record

    signatures = {
        "log": ([wasmtime.ValType.i32()], "i32"),
        "log64": ([wasmtime.ValType.i64()], "i64"),
        "abort": ([], None),
    }
    imports = []
    for imp in module.imports:
        params, kind = signatures[imp.name]
        imports.append(wasmtime.Func(store, wasmtime.FuncType(params, []), host(imp.name, kind)))

    result = {"instantiation": None, "startHostCalls": [], "invocations": [], "memoryDigest": None}
    store.set_fuel(fuel)
    try:
        instance = wasmtime.Instance(store, module, imports)
    except (wasmtime.Trap, Abort) as e:
        result["instantiation"] = trap_outcome(e)
        result["startHostCalls"] = calls[:]
        return result
    except wasmtime.WasmtimeError as e:
        # Segment bounds failures surface as plain errors without a code.
        msg = str(e)
        if "out of bounds table" in msg or "table out of bounds" in msg or "elements segment does not fit" in msg:
            result["instantiation"] = {"trap": "out-of-bounds-table"}
        elif "out of bounds memory" in msg or "data segment does not fit" in msg:
            result["instantiation"] = {"trap": "out-of-bounds-memory"}
        else:
            raise
        return result
    result["startHostCalls"] = calls[:]
    calls.clear()

    exports = instance.exports(store)
    for name, args in fixture.invocations:
        func = exports[name]
        result_types = [val_kind(t) for t in func.type(store).results]
        values = [decode_arg(a)[1] for a in args]
        store.set_fuel(fuel)
        try:
            out = func(store, *values)
            if not result_types:
                outcome = {"results": []}
            else:
                outcome = {"results": [encode_value(result_types[0], out)]}
        except (wasmtime.Trap, Abort) as e:
            outcome = trap_outcome(e)
        result["invocations"].append({"outcome": outcome, "hostCalls": calls[:]})
        calls.clear()

    memory = exports.get("memory") if hasattr(exports, "get") else None
    if memory is None:
        try:
            memory = exports["memory"]
        except KeyError:
            memory = None
    if isinstance(memory, wasmtime.Memory):
        size = memory.data_len(store)
        data = bytes(memory.read(store, 0, size)) if size else b""
        result["memoryDigest"] = "%016x" % fnv1a64(data)
    return result


def main():
    out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "fixtures")
    out.mkdir(parents=True, exist_ok=True)
    for fixture in FIXTURES:
        wasm = bytes(wasmtime.wat2wasm(fixture.wat)) + fixture.trailer
        if "(memory" in fixture.wat and '(export "memory")' not in fixture.wat:
            raise SystemExit(fixture.name + ": memory must be exported for the digest")
        (out / (fixture.name + ".wasm")).write_bytes(wasm)
        (out / (fixture.name + ".workload.json")).write_text(json.dumps(fixture.workload(), indent=2) + "\n")
        expected = run(fixture, wasm)
        (out / (fixture.name + ".expected.json")).write_text(json.dumps(expected, indent=2) + "\n")
        print("%-20s %5d bytes  %d invocations" % (fixture.name, len(wasm), len(fixture.invocations)))


if __name__ == "__main__":
    main()
