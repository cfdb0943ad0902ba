#include <lsoformer/train/trainer.hpp>

#include <lsoformer/util/rng.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lso
{

std::string_view freeze_mode_name( freeze_mode m )
{
  switch ( m )
  {
  case freeze_mode::none:
    return "none";
  case freeze_mode::freeze_graph_encoder:
    return "freeze_graph_encoder";
  case freeze_mode::freeze_recipe_encoder:
    return "freeze_recipe_encoder";
  case freeze_mode::freeze_both:
    return "freeze_both";
  }
  return "unknown";
}

std::optional<freeze_mode> freeze_mode_from_name( std::string_view name )
{
  for ( auto const m : { freeze_mode::none, freeze_mode::freeze_graph_encoder, freeze_mode::freeze_recipe_encoder, freeze_mode::freeze_both } )
  {
    if ( freeze_mode_name( m ) == name )
    {
      return m;
    }
  }
  return std::nullopt;
}

void train_config::validate( nn::decoder_kind decoder ) const
{
  if ( !( learning_rate > 0.0 ) || batch_size == 0u || max_epochs == 0u || patience == 0u )
  {
    throw std::invalid_argument( "learning rate, batch size, epochs and patience must be positive" );
  }
  if ( decoder == nn::decoder_kind::mlp && loss != loss_mode::final_only )
  {
    throw std::invalid_argument( "the concat-MLP decoder predicts the final QoR only; use the final_only loss" );
  }
}

training_data prepare_training_data( std::span<aig_graph const> circuits, std::span<dataset_sample const> samples, split_result const& split )
{
  training_data d;
  for ( auto const& g : circuits )
  {
    d.circuits.push_back( nn::featurize( g ) );
    d.max_depth = std::max( d.max_depth, d.circuits.back().depth );
  }
  auto convert = [&]( std::vector<uint32_t> const& indices, std::vector<example>& out ) {
    for ( auto const i : indices )
    {
      auto const& s = samples[i];
      if ( s.circuit_id >= circuits.size() )
      {
        throw dataset_error( "sample refers to unknown circuit " + std::to_string( s.circuit_id ) );
      }
      out.push_back( { s.circuit_id, s.steps, s.raw } );
    }
  };
  convert( split.train, d.train );
  convert( split.val, d.val );
  std::vector<double> finals;
  for ( auto const& e : d.train )
  {
    finals.push_back( e.raw.back() );
  }
  d.norm = normalizer::fit( finals );
  return d;
}

namespace
{

std::vector<double> normalized_target( training_data const& data, example const& e, uint32_t outputs )
{
  std::vector<double> t;
  if ( outputs == 1u )
  {
    t.push_back( data.norm.normalize( e.raw.back() ) );
    return t;
  }
  for ( auto const v : e.raw )
  {
    t.push_back( data.norm.normalize( v ) );
  }
  return t;
}

std::vector<nn::model_input> inputs_for( training_data const& data, std::span<example const> examples )
{
  std::vector<nn::model_input> in;
  in.reserve( examples.size() );
  for ( auto const& e : examples )
  {
    in.push_back( { &data.circuits.at( e.circuit ), e.tokens } );
  }
  return in;
}

bool frozen( nn::param_group g, freeze_mode m )
{
  switch ( m )
  {
  case freeze_mode::none:
    return false;
  case freeze_mode::freeze_graph_encoder:
    return g == nn::param_group::graph_encoder;
  case freeze_mode::freeze_recipe_encoder:
    return g == nn::param_group::recipe_encoder;
  case freeze_mode::freeze_both:
    return g == nn::param_group::graph_encoder || g == nn::param_group::recipe_encoder;
  }
  return false;
}

class adam
{
public:
  adam( nn::param_store const& ps, train_config const& cfg ) : cfg_( cfg ), m_( ps.size(), 0.0 ), v_( ps.size(), 0.0 )
  {
    for ( auto const& t : ps.tensors() )
    {
      if ( !frozen( t.group, cfg.freeze ) )
      {
        ranges_.emplace_back( t.offset, t.offset + size_t{ t.rows } * t.cols );
      }
    }
  }

  void step( nn::param_store& ps )
  {
    ++t_;
    double const c1 = 1.0 - std::pow( cfg_.beta1, static_cast<double>( t_ ) );
    double const c2 = 1.0 - std::pow( cfg_.beta2, static_cast<double>( t_ ) );
    auto& w = ps.values();
    auto const& g = ps.grads();
    for ( auto const& [begin, end] : ranges_ )
    {
      for ( size_t i = begin; i < end; ++i )
      {
        m_[i] = cfg_.beta1 * m_[i] + ( 1.0 - cfg_.beta1 ) * g[i];
        v_[i] = cfg_.beta2 * v_[i] + ( 1.0 - cfg_.beta2 ) * g[i] * g[i];
        w[i] -= cfg_.learning_rate * ( m_[i] / c1 ) / ( std::sqrt( v_[i] / c2 ) + cfg_.epsilon );
      }
    }
  }

private:
  train_config cfg_;
  std::vector<double> m_, v_;
  std::vector<std::pair<size_t, size_t>> ranges_;
  uint64_t t_ = 0u;
};

} // namespace

evaluation evaluate( nn::qor_model const& model, training_data const& data, std::span<example const> examples )
{
  evaluation ev;
  if ( examples.empty() )
  {
    return ev;
  }
  auto const m = examples.front().raw.size();
  auto const inputs = inputs_for( data, examples );
  auto const preds = model.predict( inputs );

  std::vector<std::vector<double>> step_pred( m ), step_true( m );
  double loss = 0.0;
  for ( size_t i = 0; i < examples.size(); ++i )
  {
    auto const& e = examples[i];
    auto const& p = preds[i];
    std::vector<double> raw( m );
    for ( size_t k = 0; k < m; ++k )
    {
      auto const idx = p.size() == 1 ? 0 : static_cast<Eigen::Index>( k );
      raw[k] = data.norm.denormalize( p( idx ) );
      step_pred[k].push_back( raw[k] );
      step_true[k].push_back( e.raw[k] );
    }
    auto const target = normalized_target( data, e, static_cast<uint32_t>( p.size() ) );
    loss += joint_loss( std::span<double const>( p.data(), static_cast<size_t>( p.size() ) ), target, loss_mode::trajectory );
    ev.predictions_raw.push_back( std::move( raw ) );
  }
  for ( size_t k = 0; k < m; ++k )
  {
    ev.step_mape.push_back( mape( step_pred[k], step_true[k] ) );
  }
  ev.final_mape = ev.step_mape.back();
  ev.loss = loss / static_cast<double>( examples.size() );
  return ev;
}

double mean_predictor_mape( training_data const& data, std::span<example const> examples )
{
  std::vector<double> pred, truth;
  for ( auto const& e : examples )
  {
    pred.push_back( data.norm.mean );
    truth.push_back( e.raw.back() );
  }
  return mape( pred, truth );
}

double dataset_loss( nn::qor_model const& model, training_data const& data, std::span<example const> examples, loss_mode mode )
{
  auto const inputs = inputs_for( data, examples );
  auto const preds = model.predict( inputs );
  double total = 0.0;
  for ( size_t i = 0; i < examples.size(); ++i )
  {
    auto const& p = preds[i];
    auto const target = normalized_target( data, examples[i], static_cast<uint32_t>( p.size() ) );
    total += joint_loss( std::span<double const>( p.data(), static_cast<size_t>( p.size() ) ), target,
                         p.size() == 1 ? loss_mode::trajectory : mode );
  }
  return examples.empty() ? 0.0 : total / static_cast<double>( examples.size() );
}

eval_report train( nn::qor_model& model, training_data const& data, train_config const& cfg, epoch_callback const& on_epoch )
{
  cfg.validate( model.config().decoder );
  if ( data.train.empty() )
  {
    throw std::invalid_argument( "empty training split" );
  }
  auto& ps = model.params();
  adam opt( ps, cfg );
  bool const train_graph = !frozen( nn::param_group::graph_encoder, cfg.freeze );
  auto const outputs = model.num_outputs();
  auto const mode = outputs == 1u ? loss_mode::trajectory : cfg.loss;
  auto const& monitor = data.val.empty() ? data.train : data.val;

  rng shuffle_gen( derive_seed( cfg.seed, 0x5u ) );
  std::vector<uint32_t> order( data.train.size() );
  std::iota( order.begin(), order.end(), 0u );

  eval_report report;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_values = ps.values();
  std::vector<nn::model_input> batch;
  std::vector<std::vector<double>> targets;
  uint32_t steps = 0u;
  bool step_limit = false;

  for ( uint32_t epoch = 1; epoch <= cfg.max_epochs && !step_limit; ++epoch )
  {
    shuffle_gen.shuffle( order );
    double epoch_loss = 0.0;
    for ( size_t start = 0; start < order.size(); start += cfg.batch_size )
    {
      auto const end = std::min( order.size(), start + cfg.batch_size );
      batch.clear();
      targets.clear();
      for ( size_t i = start; i < end; ++i )
      {
        auto const& e = data.train[order[i]];
        batch.push_back( { &data.circuits[e.circuit], e.tokens } );
        targets.push_back( normalized_target( data, e, outputs ) );
      }
      double const scale = 1.0 / static_cast<double>( batch.size() );
      ps.zero_grad();
      double const loss = model.backprop(
          batch,
          [&]( size_t i, Eigen::VectorXd const& y, Eigen::VectorXd& dy ) {
            double const l = joint_loss( std::span<double const>( y.data(), static_cast<size_t>( y.size() ) ), targets[i], mode,
                                         std::span<double>( dy.data(), static_cast<size_t>( dy.size() ) ) );
            dy *= scale;
            return l;
          },
          train_graph );
      if ( !std::isfinite( loss ) )
      {
        throw numeric_error( "non-finite training loss at epoch " + std::to_string( epoch ) + ", step " + std::to_string( steps + 1u ) );
      }
      opt.step( ps );
      epoch_loss += loss;
      ++steps;
      if ( cfg.max_steps && steps >= cfg.max_steps )
      {
        step_limit = true;
        break;
      }
    }

    auto const ev = evaluate( model, data, monitor );
    epoch_record rec{ epoch, steps, epoch_loss / static_cast<double>( data.train.size() ), ev.loss, ev.final_mape };
    report.curve.push_back( rec );
    report.epochs_run = epoch;
    if ( on_epoch )
    {
      on_epoch( rec );
    }
    if ( !std::isfinite( ev.final_mape ) )
    {
      throw numeric_error( "non-finite validation MAPE at epoch " + std::to_string( epoch ) );
    }
    if ( ev.final_mape < best )
    {
      best = ev.final_mape;
      best_values = ps.values();
      report.best_epoch = epoch;
    }
    else if ( epoch - report.best_epoch >= cfg.patience )
    {
      break;
    }
  }

  ps.values() = best_values;
  report.steps = steps;
  report.train_mape = evaluate( model, data, data.train ).final_mape;
  auto const val = evaluate( model, data, monitor );
  report.val_mape = val.final_mape;
  report.val_step_mape = val.step_mape;
  return report;
}

} // namespace lso
