"""SPMLD: self-paced multi-label learning with missing labels."""
