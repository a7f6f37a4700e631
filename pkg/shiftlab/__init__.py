# shiftlab: shadowing, chain transitivity and ω-limit sets in subshifts of Baire space
