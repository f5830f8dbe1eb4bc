"Config loading utilities for mdsc-ldpc."
