import math

import odvp.biharmonic

from odvp.radial_model import RadialProfile

def test_unit_plate():
	plate = odvp.biharmonic.solve_biharmonic(RadialProfile.constant(1.0, 1.0), 1.0, 3)
	assert abs(plate.shear - 1.0 / 3.0) < 1e-15
	assert abs(plate.slope - 1.0 / 45.0) < 1e-15
	assert abs(plate.edge_product - 1.0 / 135.0) < 1e-15
	assert abs(odvp.biharmonic.edge_work(plate) - plate.edge_product) < 1e-18
	assert plate.rho == 1.0
	assert plate.dimension == 3

def test_moment_energy_equals_deflection_work():
	plate = odvp.biharmonic.solve_biharmonic(RadialProfile.constant(1.0, 1.0), 1.0, 3)
	assert abs(odvp.biharmonic.moment_energy(plate) - 8.0 * math.pi / 945.0) < 1e-15
	assert abs(odvp.biharmonic.deflection_work(plate) - 8.0 * math.pi / 945.0) < 1e-15

def test_plate_residual():
	plate = odvp.biharmonic.solve_biharmonic(RadialProfile.polynomial([(0.0, 0.5, [1.0, 0.0, 1.0]), (0.5, 1.0, [0.5])]), 1.6, 3)
	assert odvp.biharmonic.plate_residual(plate) < 1e-11

def test_generate_edge_product_scales():
	# Edge product scales like rho^4 for f = 1 on the whole ball.
	for dimension in (2, 3, 4):
		yield (check_edge_product_scales, dimension)

def check_edge_product_scales(dimension):
	one = odvp.biharmonic.solve_biharmonic(RadialProfile.constant(1.0, 1.0), 1.0, dimension)
	two = odvp.biharmonic.solve_biharmonic(RadialProfile.constant(1.0, 2.0), 2.0, dimension)
	assert abs(two.edge_product - 16.0 * one.edge_product) < 1e-13
