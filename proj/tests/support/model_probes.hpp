#pragma once

#include <lsoformer/aig/random_aig.hpp>
#include <lsoformer/model/model.hpp>
#include <lsoformer/synth/heuristics.hpp>
#include <lsoformer/train/trainer.hpp>
#include <lsoformer/util/rng.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

/* Small circuits whose depth (outputs included) lies in [lo, hi]. */
inline std::vector<lso::aig_graph> shallow_circuits( size_t count, uint32_t lo, uint32_t hi, uint64_t seed )
{
  std::vector<lso::aig_graph> out;
  lso::random_aig_params p;
  p.num_inputs = 4u;
  p.num_ands = 7u;
  p.window = 4u;
  p.locality = 0.5;
  for ( uint64_t s = seed; out.size() < count; ++s )
  {
    auto g = lso::random_aig( p, s, "c" + std::to_string( s ) );
    auto const d = lso::nn::featurize( g ).depth;
    if ( d >= lo && d <= hi )
    {
      out.push_back( std::move( g ) );
    }
  }
  return out;
}

inline std::vector<uint32_t> random_tokens( lso::rng& gen, uint32_t m, uint32_t vocab = 7u )
{
  std::vector<uint32_t> t( m );
  for ( auto& x : t )
  {
    x = static_cast<uint32_t>( gen.uniform_int( vocab ) );
  }
  return t;
}

/// Adds small noise to every parameter so that biases, layer-norm gains and
/// offsets are all generic.
inline void jitter( lso::nn::qor_model& model, uint64_t seed, double scale = 0.1 )
{
  lso::rng gen( seed );
  for ( auto& v : model.params().values() )
  {
    v += scale * gen.normal();
  }
}

struct tensor_gradient_error
{
  std::string name;
  lso::nn::param_group group;
  double relative = 0.0;
  size_t entries = 0u;
};

/* Compares backprop against central differences of the summed joint loss
 * over a two-sample batch, one error per tensor:
 *   ||analytic - numeric|| / max(||analytic||, ||numeric||, 1e-12) */
inline std::vector<tensor_gradient_error> gradient_check( lso::nn::model_config const& cfg, uint64_t seed, lso::loss_mode mode,
                                                          double eps = 1e-5 )
{
  using namespace lso;
  auto const circuits = shallow_circuits( 2u, 3u, cfg.max_depth, seed );
  std::vector<nn::circuit_features> feats;
  for ( auto const& g : circuits )
  {
    feats.push_back( nn::featurize( g ) );
  }
  nn::qor_model model( cfg, seed );
  jitter( model, derive_seed( seed, 1u ) );

  rng gen( derive_seed( seed, 2u ) );
  std::vector<std::vector<uint32_t>> tokens;
  std::vector<std::vector<double>> targets;
  std::vector<nn::model_input> batch;
  for ( size_t i = 0; i < feats.size(); ++i )
  {
    tokens.push_back( random_tokens( gen, cfg.recipe_length, cfg.vocab ) );
    std::vector<double> t( model.num_outputs() );
    for ( auto& v : t )
    {
      v = gen.normal();
    }
    targets.push_back( t );
  }
  for ( size_t i = 0; i < feats.size(); ++i )
  {
    batch.push_back( { &feats[i], tokens[i] } );
  }
  auto const effective = model.num_outputs() == 1u ? loss_mode::trajectory : mode;
  auto total_loss = [&]() {
    auto const preds = model.predict( batch );
    double l = 0.0;
    for ( size_t i = 0; i < preds.size(); ++i )
    {
      l += joint_loss( std::span<double const>( preds[i].data(), static_cast<size_t>( preds[i].size() ) ), targets[i], effective );
    }
    return l;
  };

  auto& ps = model.params();
  ps.zero_grad();
  model.backprop(
      batch,
      [&]( size_t i, Eigen::VectorXd const& y, Eigen::VectorXd& dy ) {
        return joint_loss( std::span<double const>( y.data(), static_cast<size_t>( y.size() ) ), targets[i], effective,
                           std::span<double>( dy.data(), static_cast<size_t>( dy.size() ) ) );
      },
      true );
  auto const analytic = ps.grads();

  std::vector<tensor_gradient_error> errors;
  for ( auto const& t : ps.tensors() )
  {
    double diff = 0.0, na = 0.0, nn_ = 0.0;
    size_t const count = size_t{ t.rows } * t.cols;
    for ( size_t i = t.offset; i < t.offset + count; ++i )
    {
      double const saved = ps.values()[i];
      ps.values()[i] = saved + eps;
      double const lp = total_loss();
      ps.values()[i] = saved - eps;
      double const lm = total_loss();
      ps.values()[i] = saved;
      double const numeric = ( lp - lm ) / ( 2.0 * eps );
      diff += ( analytic[i] - numeric ) * ( analytic[i] - numeric );
      na += analytic[i] * analytic[i];
      nn_ += numeric * numeric;
    }
    double const scale = std::max( { std::sqrt( na ), std::sqrt( nn_ ), 1e-12 } );
    errors.push_back( { t.name, t.group, std::sqrt( diff ) / scale, count } );
  }
  return errors;
}

struct causality_stats
{
  size_t probes = 0u;
  size_t prefix_changes = 0u;
  size_t step_changes = 0u;
};

/* For `pairs` random (circuit, recipe) pairs and every position k, swaps
 * token k for a different one and compares predictions: outputs before k
 * must be bit-identical; output k should move. */
inline causality_stats causality_probe( lso::nn::qor_model const& model, std::vector<lso::nn::circuit_features> const& circuits,
                                        size_t pairs, uint64_t seed )
{
  using namespace lso;
  auto const& cfg = model.config();
  rng gen( seed );
  causality_stats st;
  for ( size_t p = 0; p < pairs; ++p )
  {
    auto const& c = circuits[gen.uniform_int( circuits.size() )];
    auto tokens = random_tokens( gen, cfg.recipe_length, cfg.vocab );
    auto const base = model.predict( nn::model_input{ &c, tokens } );
    for ( uint32_t k = 0; k < cfg.recipe_length; ++k )
    {
      auto changed = tokens;
      changed[k] = static_cast<uint32_t>( ( tokens[k] + 1u + gen.uniform_int( cfg.vocab - 1u ) ) % cfg.vocab );
      auto const y = model.predict( nn::model_input{ &c, changed } );
      ++st.probes;
      for ( uint32_t j = 0; j < k; ++j )
      {
        if ( y( j ) != base( j ) )
        {
          ++st.prefix_changes;
          break;
        }
      }
      st.step_changes += y( k ) != base( k ) ? 1u : 0u;
    }
  }
  return st;
}

/* Four (circuit, recipe) samples with real, nowhere-zero trajectories on
 * four distinct circuits, all in the training split. */
inline lso::training_data overfit_data( uint32_t m, uint64_t seed )
{
  using namespace lso;
  auto const pool = shallow_circuits( 16u, 4u, 12u, seed );
  rng gen( derive_seed( seed, 3u ) );
  training_data d;
  std::vector<double> finals;
  for ( auto const& g : pool )
  {
    if ( d.train.size() == 4u )
    {
      break;
    }
    example e;
    e.tokens = random_tokens( gen, m );
    std::vector<heuristic> steps;
    for ( auto const t : e.tokens )
    {
      steps.push_back( heuristic_from_token( t ) );
    }
    e.raw = run_recipe( g, steps, qor_metric::area ).values;
    if ( std::find( e.raw.begin(), e.raw.end(), 0.0 ) != e.raw.end() )
    {
      continue;
    }
    e.circuit = static_cast<uint32_t>( d.circuits.size() );
    d.circuits.push_back( nn::featurize( g ) );
    d.max_depth = std::max( d.max_depth, d.circuits.back().depth );
    finals.push_back( e.raw.back() );
    d.train.push_back( std::move( e ) );
  }
  d.norm = normalizer::fit( finals );
  return d;
}
