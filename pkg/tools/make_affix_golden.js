#!/usr/bin/env node
// Stems a wordlist with the snowball-stemmers npm package (the published
// Snowball Turkish algorithm) and emits the frozen golden TSV used by the
// conformance tests. Run once; the output is committed.
//
//   node tools/make_affix_golden.js < wordlist.txt > tests/data/affix_golden.tsv

const readline = require("readline");
const stemmers = require("snowball-stemmers");

const turkish = stemmers.newStemmer("turkish");
const rl = readline.createInterface({ input: process.stdin });

rl.on("line", (line) => {
  const word = line.trim();
  if (word.length === 0) return;
  process.stdout.write(word + "\t" + turkish.stem(word) + "\n");
});
