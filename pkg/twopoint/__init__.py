"""Two-point function of quadrangulations: reference route, kernel route, closed forms."""
