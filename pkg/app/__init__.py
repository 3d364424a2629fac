# Wright Partial Sums Verifier
