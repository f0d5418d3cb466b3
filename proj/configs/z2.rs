# Complete rewriting system for Z^2 over a, b and their formal inverses.
letters: a A b B
inverses: a A, b B
rule: aA ->
rule: Aa ->
rule: bB ->
rule: Bb ->
rule: ba -> ab
rule: bA -> Ab
rule: Ba -> aB
rule: BA -> AB
